#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace knotoid {

enum class Role : std::uint8_t { Over, Under };
enum class ComponentKind : std::uint8_t { OpenLeg, Loop };
enum class Parity : std::uint8_t { Even, Odd, Link };

inline std::string_view to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        case Parity::Link: return "link";
    }
    return "?";
}

struct Passage {
    std::string label;
    Role role = Role::Over;
    int sign = 1;

    friend bool operator==(const Passage&, const Passage&) = default;
};

/// An OpenLeg is read tail to head. A Loop is cyclic; index 0 is its rotation anchor.
struct ComponentCode {
    ComponentKind kind = ComponentKind::OpenLeg;
    std::vector<Passage> passages;
};

namespace detail {

template <class T>
bool equal_up_to_rotation(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    const std::size_t n = a.size();
    for (std::size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = a[i] == b[(i + shift) % n];
        if (ok) return true;
    }
    return false;
}

}  // namespace detail

inline bool operator==(const ComponentCode& a, const ComponentCode& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == ComponentKind::OpenLeg) return a.passages == b.passages;
    return detail::equal_up_to_rotation(a.passages, b.passages);
}

struct KnotoidCode {
    std::vector<ComponentCode> components;
    std::map<std::string, std::string> metadata;

    std::size_t passage_count() const {
        std::size_t n = 0;
        for (const auto& c : components) n += c.passages.size();
        return n;
    }
    std::size_t crossing_count() const { return passage_count() / 2; }
    std::size_t leg_count() const {
        return static_cast<std::size_t>(std::count_if(components.begin(), components.end(), [](const auto& c) {
            return c.kind == ComponentKind::OpenLeg;
        }));
    }
    bool is_single_leg() const {
        return components.size() == 1 && components[0].kind == ComponentKind::OpenLeg;
    }
    bool is_single_component() const { return components.size() == 1; }

    std::optional<std::string> meta(const std::string& key) const {
        auto it = metadata.find(key);
        if (it == metadata.end()) return std::nullopt;
        return it->second;
    }
    bool declared_classical() const { return meta("declared_classical").value_or("false") == "true"; }
    bool declared_knot_type() const { return meta("knot_type").value_or("false") == "true"; }
    std::string source() const { return meta("source").value_or(""); }
    /// "declared_height" is either "h" or an interval "lo..hi"; the upper end is returned.
    std::optional<int> declared_height_upper() const {
        auto v = meta("declared_height");
        if (!v) return std::nullopt;
        auto dots = v->find("..");
        return std::stoi(dots == std::string::npos ? *v : v->substr(dots + 2));
    }

    friend bool operator==(const KnotoidCode&, const KnotoidCode&) = default;
};

/// Per-crossing flat chirality: +1 iff the first visit passes as the left-incoming strand.
struct FlatPassage {
    std::string label;
    int visit = 0;

    friend bool operator==(const FlatPassage&, const FlatPassage&) = default;
};

struct FlatComponent {
    ComponentKind kind = ComponentKind::OpenLeg;
    std::vector<FlatPassage> passages;

    friend bool operator==(const FlatComponent&, const FlatComponent&) = default;
};

struct FlatCode {
    std::vector<FlatComponent> components;
    std::map<std::string, int> chirality;

    std::size_t crossing_count() const { return chirality.size(); }
    friend bool operator==(const FlatCode&, const FlatCode&) = default;
};

struct Position {
    int component = 0;
    int index = 0;

    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

struct CrossingInfo {
    std::string label;
    int sign = 1;
    Parity parity = Parity::Even;
    std::array<Position, 2> positions{};
};

// ---------------------------------------------------------------------------
// validation, parsing, serialization

inline void validate(const KnotoidCode& code) {
    if (code.components.empty()) throw Error(ErrorKind::Shape, "a code needs at least one component");
    struct Seen {
        int count = 0;
        int overs = 0;
        int sign = 0;
    };
    std::map<std::string, Seen> seen;
    for (const auto& comp : code.components) {
        for (const auto& p : comp.passages) {
            if (p.sign != 1 && p.sign != -1) throw Error(ErrorKind::Syntax, "sign must be +1 or -1 at " + p.label);
            if (p.label.empty()) throw Error(ErrorKind::Syntax, "empty crossing label");
            auto& s = seen[p.label];
            ++s.count;
            if (p.role == Role::Over) ++s.overs;
            if (s.count == 1) s.sign = p.sign;
            else if (s.count == 2 && s.sign != p.sign)
                throw Error(ErrorKind::SignMismatch, "crossing " + p.label + " carries both signs");
        }
    }
    for (const auto& [label, s] : seen) {
        if (s.count != 2)
            throw Error(ErrorKind::OddOccurrence,
                        "crossing " + label + " occurs " + std::to_string(s.count) + " times");
        if (s.overs != 1) throw Error(ErrorKind::DuplicateRole, "crossing " + label + " needs one O and one U");
    }
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline bool valid_label(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

inline Passage parse_token(std::string_view tok) {
    constexpr std::string_view unicode_minus = "\xE2\x88\x92";
    if (tok.size() < 3) throw Error(ErrorKind::Syntax, "malformed token '" + std::string(tok) + "'");
    Passage p;
    if (tok[0] == 'O') p.role = Role::Over;
    else if (tok[0] == 'U') p.role = Role::Under;
    else throw Error(ErrorKind::Syntax, "token must start with O or U: '" + std::string(tok) + "'");
    std::string_view body = tok.substr(1);
    if (body.ends_with(unicode_minus)) {
        p.sign = -1;
        body.remove_suffix(unicode_minus.size());
    } else if (body.back() == '+') {
        p.sign = 1;
        body.remove_suffix(1);
    } else if (body.back() == '-') {
        p.sign = -1;
        body.remove_suffix(1);
    } else {
        throw Error(ErrorKind::Syntax, "token must end with a sign: '" + std::string(tok) + "'");
    }
    if (!valid_label(body)) throw Error(ErrorKind::Syntax, "bad crossing label in '" + std::string(tok) + "'");
    p.label = std::string(body);
    return p;
}

}  // namespace detail

inline KnotoidCode parse(std::string_view text) {
    KnotoidCode code;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.starts_with("meta ")) {
            std::string kv = detail::trim(std::string_view(line).substr(5));
            auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw Error(ErrorKind::Syntax, "line " + std::to_string(line_no) + ": meta needs key=value");
            code.metadata[detail::trim(std::string_view(kv).substr(0, eq))] =
                detail::trim(std::string_view(kv).substr(eq + 1));
            continue;
        }
        ComponentCode comp;
        std::string_view rest;
        if (line.starts_with("open:")) {
            comp.kind = ComponentKind::OpenLeg;
            rest = std::string_view(line).substr(5);
        } else if (line.starts_with("loop:")) {
            comp.kind = ComponentKind::Loop;
            rest = std::string_view(line).substr(5);
        } else {
            throw Error(ErrorKind::Syntax, "line " + std::to_string(line_no) + ": expected open:, loop:, meta or #");
        }
        std::istringstream toks{std::string(rest)};
        std::string tok;
        while (toks >> tok) comp.passages.push_back(detail::parse_token(tok));
        code.components.push_back(std::move(comp));
    }
    validate(code);
    return code;
}

inline std::string serialize_component(const ComponentCode& comp) {
    std::string out = comp.kind == ComponentKind::OpenLeg ? "open:" : "loop:";
    for (const auto& p : comp.passages) {
        out += ' ';
        out += p.role == Role::Over ? 'O' : 'U';
        out += p.label;
        out += p.sign > 0 ? '+' : '-';
    }
    return out;
}

/// Metadata first (sorted by key), then one line per component; no trailing newline.
inline std::string serialize(const KnotoidCode& code) {
    std::string out;
    for (const auto& [k, v] : code.metadata) out += "meta " + k + "=" + v + "\n";
    for (std::size_t i = 0; i < code.components.size(); ++i) {
        if (i) out += '\n';
        out += serialize_component(code.components[i]);
    }
    return out;
}

/// The components only, on one line separated by " ; " (used for echoes and walk traces).
inline std::string serialize_inline(const KnotoidCode& code) {
    std::string out;
    for (std::size_t i = 0; i < code.components.size(); ++i) {
        if (i) out += " ; ";
        out += serialize_component(code.components[i]);
    }
    return out;
}

inline KnotoidCode trivial_knotoid() {
    KnotoidCode code;
    code.components.push_back(ComponentCode{ComponentKind::OpenLeg, {}});
    return code;
}

// ---------------------------------------------------------------------------
// dense internal form shared by the engines

/// Dense view of a diagram. Passages are numbered globally in component order.
/// Strand 0 of a crossing is its left-incoming strand, strand 1 the right-incoming one;
/// the counterclockwise rotation at a crossing is (in0, in1, out0, out1).
struct Diagram {
    struct Comp {
        ComponentKind kind;
        int offset;
        int length;
    };
    std::vector<Comp> comps;
    std::vector<int> pass_crossing;
    std::vector<std::uint8_t> pass_strand;
    std::vector<int> pass_comp;
    std::vector<std::array<int, 2>> cross_pass;
    std::vector<int> cross_sign;
    std::vector<std::string> labels;

    int crossings() const { return static_cast<int>(cross_pass.size()); }
    int passages() const { return static_cast<int>(pass_crossing.size()); }
    int legs() const {
        return static_cast<int>(std::count_if(comps.begin(), comps.end(), [](const Comp& c) {
            return c.kind == ComponentKind::OpenLeg;
        }));
    }
    int over_passage(int c) const { return cross_sign[c] > 0 ? cross_pass[c][0] : cross_pass[c][1]; }
    /// Next passage along the component, or -1 past the head of a leg.
    int next(int p) const {
        const Comp& c = comps[pass_comp[p]];
        int i = p - c.offset + 1;
        if (i < c.length) return c.offset + i;
        return c.kind == ComponentKind::Loop ? c.offset : -1;
    }
    int prev(int p) const {
        const Comp& c = comps[pass_comp[p]];
        int i = p - c.offset - 1;
        if (i >= 0) return c.offset + i;
        return c.kind == ComponentKind::Loop ? c.offset + c.length - 1 : -1;
    }
};

namespace detail {

template <class Comps, class Visit>
Diagram build_diagram(const Comps& comps, Visit&& strand_of) {
    Diagram d;
    std::unordered_map<std::string, int> ids;
    int offset = 0;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& comp = comps[ci];
        d.comps.push_back({comp.kind, offset, static_cast<int>(comp.passages.size())});
        for (const auto& p : comp.passages) {
            auto [it, fresh] = ids.try_emplace(p.label, static_cast<int>(d.labels.size()));
            if (fresh) {
                d.labels.push_back(p.label);
                d.cross_pass.push_back({-1, -1});
                d.cross_sign.push_back(1);
            }
            const int c = it->second;
            const int g = static_cast<int>(d.pass_crossing.size());
            auto [strand, sign] = strand_of(p, fresh);
            d.pass_crossing.push_back(c);
            d.pass_strand.push_back(static_cast<std::uint8_t>(strand));
            d.pass_comp.push_back(static_cast<int>(ci));
            d.cross_pass[c][strand] = g;
            d.cross_sign[c] = sign;
        }
        offset += static_cast<int>(comp.passages.size());
    }
    return d;
}

}  // namespace detail

/// Over strand is left-incoming exactly on positive crossings.
inline Diagram diagram_of(const KnotoidCode& code) {
    return detail::build_diagram(code.components, [](const Passage& p, bool) {
        const int strand = ((p.role == Role::Over) == (p.sign > 0)) ? 0 : 1;
        return std::pair{strand, p.sign};
    });
}

inline Diagram diagram_of(const FlatCode& code) {
    return detail::build_diagram(code.components, [&](const FlatPassage& p, bool) {
        const int chir = code.chirality.at(p.label);
        const bool first_left = chir > 0;
        const int strand = ((p.visit == 0) == first_left) ? 0 : 1;
        return std::pair{strand, 1};
    });
}

// ---------------------------------------------------------------------------
// structural derivations

inline KnotoidCode reverse(const KnotoidCode& code) {
    KnotoidCode out = code;
    for (auto& comp : out.components) std::reverse(comp.passages.begin(), comp.passages.end());
    return out;
}

inline FlatCode flat_projection(const KnotoidCode& code) {
    FlatCode flat;
    std::map<std::string, int> visits;
    for (const auto& comp : code.components) {
        FlatComponent fc{comp.kind, {}};
        for (const auto& p : comp.passages) {
            int v = visits[p.label]++;
            fc.passages.push_back({p.label, v});
            if (v == 0) {
                const bool left = (p.role == Role::Over) == (p.sign > 0);
                flat.chirality[p.label] = left ? 1 : -1;
            }
        }
        flat.components.push_back(std::move(fc));
    }
    return flat;
}

/// Parity per dense crossing. Only same-component, non-link passages are counted between
/// the two occurrences; the count has the same parity in either direction around a loop.
inline std::vector<Parity> crossing_parities(const Diagram& d) {
    const int n = d.crossings();
    std::vector<Parity> par(n, Parity::Even);
    std::vector<bool> link(n, false);
    for (int c = 0; c < n; ++c) link[c] = d.pass_comp[d.cross_pass[c][0]] != d.pass_comp[d.cross_pass[c][1]];
    for (int c = 0; c < n; ++c) {
        if (link[c]) {
            par[c] = Parity::Link;
            continue;
        }
        int a = std::min(d.cross_pass[c][0], d.cross_pass[c][1]);
        int b = std::max(d.cross_pass[c][0], d.cross_pass[c][1]);
        int between = 0;
        for (int g = a + 1; g < b; ++g)
            if (!link[d.pass_crossing[g]]) ++between;
        par[c] = (between % 2) ? Parity::Odd : Parity::Even;
    }
    return par;
}

inline std::vector<CrossingInfo> classify_crossings(const KnotoidCode& code) {
    const Diagram d = diagram_of(code);
    const auto par = crossing_parities(d);
    std::vector<CrossingInfo> out;
    for (int c = 0; c < d.crossings(); ++c) {
        CrossingInfo info;
        info.label = d.labels[c];
        info.sign = d.cross_sign[c];
        info.parity = par[c];
        std::array<int, 2> g{d.cross_pass[c][0], d.cross_pass[c][1]};
        std::sort(g.begin(), g.end());
        for (int k = 0; k < 2; ++k) {
            const int comp = d.pass_comp[g[k]];
            info.positions[k] = {comp, g[k] - d.comps[comp].offset};
        }
        out.push_back(std::move(info));
    }
    return out;
}

inline bool evenly_intersticed(const KnotoidCode& code) {
    if (!code.is_single_leg()) throw Error(ErrorKind::Shape, "evenly_intersticed needs a single open leg");
    const auto par = crossing_parities(diagram_of(code));
    return std::all_of(par.begin(), par.end(), [](Parity p) { return p == Parity::Even; });
}

/// Crossing label for dense index i: A..Z, then X26, X27, ...
inline std::string letter_label(int i) { return i < 26 ? std::string(1, static_cast<char>('A' + i)) : "X" + std::to_string(i); }

/// n-fold spiral: X1..Xn, then (Yk, X(n+1-k)) for k = 1..n, then Yn..Y1, where Xi is label i and
/// Yk is label n+k. The flat pattern is fixed; each passage is Over iff it runs on the
/// left-incoming strand of a positive crossing or the right-incoming strand of a negative one.
inline KnotoidCode spiral(int n, const std::vector<int>& signs) {
    if (n < 1) throw Error(ErrorKind::Shape, "spiral needs n >= 1");
    if (static_cast<int>(signs.size()) != 2 * n)
        throw Error(ErrorKind::LengthMismatch, "spiral(" + std::to_string(n) + ") needs " + std::to_string(2 * n) +
                                                   " signs, got " + std::to_string(signs.size()));
    std::vector<std::pair<int, int>> seq;  // (label, strand)
    for (int i = 0; i < n; ++i) seq.emplace_back(i, 0);
    for (int k = 0; k < n; ++k) {
        seq.emplace_back(n + k, 1);
        seq.emplace_back(n - 1 - k, 1);
    }
    for (int k = n - 1; k >= 0; --k) seq.emplace_back(n + k, 0);
    KnotoidCode code = trivial_knotoid();
    for (auto [label, strand] : seq) {
        const int s = signs[label];
        if (s != 1 && s != -1) throw Error(ErrorKind::Syntax, "spiral signs must be +1 or -1");
        code.components[0].passages.push_back(
            {letter_label(label), (strand == 0) == (s > 0) ? Role::Over : Role::Under, s});
    }
    return code;
}

/// Crossing labels in first-occurrence order.
inline std::vector<std::string> crossing_labels(const KnotoidCode& code) { return diagram_of(code).labels; }

}  // namespace knotoid
