#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "code.hpp"
#include "error.hpp"

namespace knotoid {

enum class MoveKind : std::uint8_t { R1Insert, R1Delete, R2Insert, R2Delete, R3Slide };

inline std::string_view to_string(MoveKind k) {
    switch (k) {
        case MoveKind::R1Insert: return "R1_insert";
        case MoveKind::R1Delete: return "R1_delete";
        case MoveKind::R2Insert: return "R2_insert";
        case MoveKind::R2Delete: return "R2_delete";
        case MoveKind::R3Slide: return "R3_slide";
    }
    return "?";
}

/// sites: insertion points (passage index before which to insert, up to the component length)
/// for inserts; first positions of adjacent passage pairs for deletes and slides.
/// inserted: two passages per insertion site, in site order. Pairs sharing a site keep site order.
struct MoveSpec {
    MoveKind kind = MoveKind::R1Insert;
    std::vector<Position> sites;
    std::vector<Passage> inserted;

    friend bool operator==(const MoveSpec&, const MoveSpec&) = default;
};

inline std::string describe(const MoveSpec& m) {
    std::string out(to_string(m.kind));
    out += " @";
    for (std::size_t i = 0; i < m.sites.size(); ++i) {
        if (i) out += ',';
        out += '(' + std::to_string(m.sites[i].component) + ',' + std::to_string(m.sites[i].index) + ')';
    }
    for (std::size_t i = 0; i < m.inserted.size(); ++i) {
        const auto& p = m.inserted[i];
        out += (i % 2 == 0) ? (i == 0 ? " " : " | ") : " ";
        out += (p.role == Role::Over ? "O" : "U") + p.label + (p.sign > 0 ? "+" : "-");
    }
    return out;
}

namespace detail {

inline int comp_length(const KnotoidCode& code, int c) {
    return static_cast<int>(code.components[static_cast<std::size_t>(c)].passages.size());
}

inline const Passage& at(const KnotoidCode& code, Position p) {
    return code.components[static_cast<std::size_t>(p.component)].passages[static_cast<std::size_t>(p.index)];
}

inline bool valid_position(const KnotoidCode& code, Position p) {
    return p.component >= 0 && p.component < static_cast<int>(code.components.size()) && p.index >= 0 &&
           p.index < comp_length(code, p.component);
}

/// Successor along the component; legs stop at the head.
inline std::optional<Position> successor(const KnotoidCode& code, Position p) {
    const int len = comp_length(code, p.component);
    if (p.index + 1 < len) return Position{p.component, p.index + 1};
    if (code.components[static_cast<std::size_t>(p.component)].kind == ComponentKind::Loop && len >= 2)
        return Position{p.component, 0};
    return std::nullopt;
}

inline std::vector<Position> insertion_sites(const KnotoidCode& code) {
    std::vector<Position> out;
    for (int c = 0; c < static_cast<int>(code.components.size()); ++c) {
        const int len = comp_length(code, c);
        const bool leg = code.components[static_cast<std::size_t>(c)].kind == ComponentKind::OpenLeg;
        const int last = leg ? len : std::max(len - 1, 0);
        for (int i = 0; i <= last; ++i) out.push_back({c, i});
    }
    return out;
}

struct Arc {
    Position first;
    Position second;
};

inline std::vector<Arc> adjacent_pairs(const KnotoidCode& code) {
    std::vector<Arc> out;
    for (int c = 0; c < static_cast<int>(code.components.size()); ++c)
        for (int i = 0; i < comp_length(code, c); ++i)
            if (auto nxt = successor(code, {c, i})) out.push_back({{c, i}, *nxt});
    return out;
}

inline std::set<std::string> used_labels(const KnotoidCode& code) {
    std::set<std::string> used;
    for (const auto& comp : code.components)
        for (const auto& p : comp.passages) used.insert(p.label);
    return used;
}

/// Smallest unused positive integers, rendered as labels.
inline std::vector<std::string> fresh_labels(const KnotoidCode& code, int k) {
    const auto used = used_labels(code);
    std::vector<std::string> out;
    for (int i = 1; static_cast<int>(out.size()) < k; ++i)
        if (!used.count(std::to_string(i))) out.push_back(std::to_string(i));
    return out;
}

inline bool is_left_incoming(const Passage& p) { return (p.role == Role::Over) == (p.sign > 0); }

[[noreturn]] inline void inapplicable(const std::string& why) { throw Error(ErrorKind::InapplicableMove, why); }

struct PairInsert {
    Position site;
    std::array<Passage, 2> pair;
};

/// Inserts pairs; earlier items precede later ones at a shared site. Returns landing positions.
inline std::vector<Position> insert_pairs(KnotoidCode& code, const std::vector<PairInsert>& items) {
    for (const auto& it : items) {
        if (it.site.component < 0 || it.site.component >= static_cast<int>(code.components.size()) ||
            it.site.index < 0 || it.site.index > comp_length(code, it.site.component))
            inapplicable("insertion site out of range");
    }
    std::vector<Position> landed;
    for (std::size_t k = 0; k < items.size(); ++k) {
        const auto& it = items[k];
        int shift = 0;
        for (std::size_t j = 0; j < items.size(); ++j) {
            const auto& o = items[j];
            if (o.site.component != it.site.component) continue;
            if (o.site.index < it.site.index || (o.site.index == it.site.index && j < k)) shift += 2;
        }
        landed.push_back({it.site.component, it.site.index + shift});
    }
    std::vector<std::size_t> order(items.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& pa = items[a].site;
        const auto& pb = items[b].site;
        if (pa.component != pb.component) return pa.component < pb.component;
        if (pa.index != pb.index) return pa.index > pb.index;
        return a > b;
    });
    for (std::size_t k : order) {
        auto& seq = code.components[static_cast<std::size_t>(items[k].site.component)].passages;
        seq.insert(seq.begin() + items[k].site.index, items[k].pair.begin(), items[k].pair.end());
    }
    return landed;
}

inline std::vector<Arc> resolve_arcs(const KnotoidCode& code, const std::vector<Position>& firsts) {
    std::vector<Arc> arcs;
    std::set<Position> taken;
    for (const auto& f : firsts) {
        if (!valid_position(code, f)) inapplicable("move site out of range");
        auto nxt = successor(code, f);
        if (!nxt) inapplicable("no adjacent passage after the move site");
        if (!taken.insert(f).second || !taken.insert(*nxt).second) inapplicable("move sites overlap");
        arcs.push_back({f, *nxt});
    }
    return arcs;
}

inline void erase_arcs(KnotoidCode& code, const std::vector<Arc>& arcs) {
    std::vector<Position> doomed;
    for (const auto& a : arcs) {
        doomed.push_back(a.first);
        doomed.push_back(a.second);
    }
    std::sort(doomed.begin(), doomed.end(), [](Position a, Position b) {
        return a.component != b.component ? a.component < b.component : a.index > b.index;
    });
    for (const auto& p : doomed) {
        auto& seq = code.components[static_cast<std::size_t>(p.component)].passages;
        seq.erase(seq.begin() + p.index);
    }
}

inline bool r1_pair_ok(const Passage& a, const Passage& b) {
    return a.label == b.label && a.role != b.role && a.sign == b.sign;
}

/// Two arcs form a bigon when they carry the same two crossings of opposite signs, one arc
/// passing over both and the other under both.
inline bool r2_pairs_ok(const Passage& a0, const Passage& a1, const Passage& b0, const Passage& b1) {
    if (a0.label == a1.label || a0.role != a1.role || b0.role != b1.role || a0.role == b0.role) return false;
    if (a0.sign != -a1.sign) return false;
    const bool same = b0.label == a0.label && b1.label == a1.label;
    const bool swapped = b0.label == a1.label && b1.label == a0.label;
    return (same || swapped) && b0.sign == (b0.label == a0.label ? a0.sign : a1.sign) &&
           b1.sign == (b1.label == a0.label ? a0.sign : a1.sign);
}

/// Three arcs bound a triangle when each pair of arcs shares one crossing, one arc is over at both
/// its crossings and one is under at both. With c(i,j) = +1 iff arc i runs left-incoming at its
/// crossing with arc j and f(i,j) = +1 iff that crossing comes first along arc i, the product
/// c(i,j) f(i,j) f(j,i) must agree over the cyclic pairs (0,1), (1,2), (2,0).
inline bool r3_arcs_ok(const KnotoidCode& code, const std::array<Arc, 3>& arcs) {
    std::array<std::array<Passage, 2>, 3> ps{};
    int overs_total = 0;
    std::array<int, 3> overs{};
    for (int i = 0; i < 3; ++i) {
        ps[i] = {at(code, arcs[i].first), at(code, arcs[i].second)};
        if (ps[i][0].label == ps[i][1].label) return false;
        overs[i] = (ps[i][0].role == Role::Over) + (ps[i][1].role == Role::Over);
        overs_total += overs[i];
    }
    std::array<int, 3> sorted = overs;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{0, 1, 2} || overs_total != 3) return false;
    // index of the passage on arc i shared with arc j, or -1
    auto shared = [&](int i, int j) -> int {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (ps[i][a].label == ps[j][b].label) return a;
        return -1;
    };
    int product = 0;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const int si = shared(i, j);
        const int sj = shared(j, i);
        if (si < 0 || sj < 0) return false;
        if (ps[i][1 - si].label == ps[j][1 - sj].label) return false;
        const int c = is_left_incoming(ps[i][si]) ? 1 : -1;
        const int fi = si == 0 ? 1 : -1;
        const int fj = sj == 0 ? 1 : -1;
        const int v = c * fi * fj;
        if (product == 0) product = v;
        else if (v != product) return false;
    }
    return true;
}

}  // namespace detail

/// Applies a move; throws InapplicableMove when the code does not match the move's pattern.
inline KnotoidCode apply(const KnotoidCode& code, const MoveSpec& m) {
    KnotoidCode out = code;
    const auto used = detail::used_labels(code);
    switch (m.kind) {
        case MoveKind::R1Insert: {
            if (m.sites.size() != 1 || m.inserted.size() != 2) detail::inapplicable("R1_insert takes one site, two passages");
            if (!detail::r1_pair_ok(m.inserted[0], m.inserted[1]) || used.count(m.inserted[0].label))
                detail::inapplicable("R1_insert needs a fresh label with one O and one U of equal sign");
            detail::insert_pairs(out, {{m.sites[0], {m.inserted[0], m.inserted[1]}}});
            break;
        }
        case MoveKind::R1Delete: {
            if (m.sites.size() != 1 || !m.inserted.empty()) detail::inapplicable("R1_delete takes one site");
            auto arcs = detail::resolve_arcs(code, m.sites);
            if (!detail::r1_pair_ok(detail::at(code, arcs[0].first), detail::at(code, arcs[0].second)))
                detail::inapplicable("R1_delete needs two adjacent passages of one crossing");
            detail::erase_arcs(out, arcs);
            break;
        }
        case MoveKind::R2Insert: {
            if (m.sites.size() != 2 || m.inserted.size() != 4) detail::inapplicable("R2_insert takes two sites, four passages");
            const auto& in = m.inserted;
            if (!detail::r2_pairs_ok(in[0], in[1], in[2], in[3]) || used.count(in[0].label) || used.count(in[1].label))
                detail::inapplicable("R2_insert needs two fresh opposite-sign crossings, OO on one arc and UU on the other");
            detail::insert_pairs(out, {{m.sites[0], {in[0], in[1]}}, {m.sites[1], {in[2], in[3]}}});
            break;
        }
        case MoveKind::R2Delete: {
            if (m.sites.size() != 2 || !m.inserted.empty()) detail::inapplicable("R2_delete takes two sites");
            auto arcs = detail::resolve_arcs(code, m.sites);
            if (!detail::r2_pairs_ok(detail::at(code, arcs[0].first), detail::at(code, arcs[0].second),
                                     detail::at(code, arcs[1].first), detail::at(code, arcs[1].second)))
                detail::inapplicable("R2_delete sites do not bound a bigon");
            detail::erase_arcs(out, arcs);
            break;
        }
        case MoveKind::R3Slide: {
            if (m.sites.size() != 3 || !m.inserted.empty()) detail::inapplicable("R3_slide takes three sites");
            auto arcs = detail::resolve_arcs(code, m.sites);
            if (!detail::r3_arcs_ok(code, {arcs[0], arcs[1], arcs[2]}))
                detail::inapplicable("R3_slide sites do not bound a triangle");
            for (const auto& a : arcs) {
                auto& seq = out.components[static_cast<std::size_t>(a.first.component)].passages;
                std::swap(seq[static_cast<std::size_t>(a.first.index)], seq[static_cast<std::size_t>(a.second.index)]);
            }
            break;
        }
    }
    return out;
}

/// Move undoing m on the code it was applied to: apply(apply(code, m), inverse(code, m)) == code.
inline MoveSpec inverse(const KnotoidCode& before, const MoveSpec& m) {
    switch (m.kind) {
        case MoveKind::R1Insert:
        case MoveKind::R2Insert: {
            KnotoidCode after = before;
            std::vector<detail::PairInsert> items;
            for (std::size_t k = 0; k < m.sites.size(); ++k)
                items.push_back({m.sites[k], {m.inserted[2 * k], m.inserted[2 * k + 1]}});
            auto landed = detail::insert_pairs(after, items);
            return {m.kind == MoveKind::R1Insert ? MoveKind::R1Delete : MoveKind::R2Delete, landed, {}};
        }
        case MoveKind::R1Delete:
        case MoveKind::R2Delete: {
            auto arcs = detail::resolve_arcs(before, m.sites);
            struct Key {
                Position site;
                bool wraps;
                int original;
                std::array<Passage, 2> pair;
            };
            std::vector<Key> keys;
            for (const auto& a : arcs) {
                const bool wraps = a.second.index < a.first.index;
                int removed_before = 0;
                for (const auto& b : arcs) {
                    if (b.first.component != a.first.component) continue;
                    removed_before += (b.first.index < a.first.index) + (b.second.index < a.first.index);
                }
                const int new_len = detail::comp_length(before, a.first.component) - 2 * static_cast<int>(std::count_if(
                                        arcs.begin(), arcs.end(),
                                        [&](const detail::Arc& b) { return b.first.component == a.first.component; }));
                Position site{a.first.component, wraps ? new_len : a.first.index - removed_before};
                keys.push_back({site, wraps, a.first.index, {detail::at(before, a.first), detail::at(before, a.second)}});
            }
            std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
                if (a.site != b.site) return a.site < b.site;
                if (a.wraps != b.wraps) return !a.wraps;
                return a.original < b.original;
            });
            MoveSpec inv{m.kind == MoveKind::R1Delete ? MoveKind::R1Insert : MoveKind::R2Insert, {}, {}};
            for (const auto& k : keys) {
                inv.sites.push_back(k.site);
                inv.inserted.push_back(k.pair[0]);
                inv.inserted.push_back(k.pair[1]);
            }
            return inv;
        }
        case MoveKind::R3Slide: return m;
    }
    return m;
}

/// Every generating move applicable to code whose result has at most max_crossings crossings.
inline std::vector<MoveSpec> applicable_moves(const KnotoidCode& code,
                                              int max_crossings = std::numeric_limits<int>::max()) {
    std::vector<MoveSpec> out;
    const int n = static_cast<int>(code.crossing_count());
    const auto sites = detail::insertion_sites(code);
    const auto arcs = detail::adjacent_pairs(code);

    if (n + 1 <= max_crossings) {
        const auto x = detail::fresh_labels(code, 1)[0];
        for (const auto& s : sites)
            for (Role first : {Role::Over, Role::Under})
                for (int sign : {1, -1}) {
                    const Role second = first == Role::Over ? Role::Under : Role::Over;
                    out.push_back({MoveKind::R1Insert, {s}, {{x, first, sign}, {x, second, sign}}});
                }
    }
    for (const auto& a : arcs)
        if (detail::r1_pair_ok(detail::at(code, a.first), detail::at(code, a.second)))
            out.push_back({MoveKind::R1Delete, {a.first}, {}});

    if (n + 2 <= max_crossings) {
        const auto fresh = detail::fresh_labels(code, 2);
        const auto& x = fresh[0];
        const auto& y = fresh[1];
        for (std::size_t i = 0; i < sites.size(); ++i)
            for (std::size_t j = i; j < sites.size(); ++j)
                for (Role r : {Role::Over, Role::Under})
                    for (bool swap : {false, true})
                        for (int sign : {1, -1}) {
                            const Role o = r == Role::Over ? Role::Under : Role::Over;
                            Passage b0{swap ? y : x, o, swap ? -sign : sign};
                            Passage b1{swap ? x : y, o, swap ? sign : -sign};
                            out.push_back({MoveKind::R2Insert, {sites[i], sites[j]}, {{x, r, sign}, {y, r, -sign}, b0, b1}});
                        }
    }
    auto disjoint = [](const detail::Arc& a, const detail::Arc& b) {
        return a.first != b.first && a.first != b.second && a.second != b.first && a.second != b.second;
    };
    for (std::size_t i = 0; i < arcs.size(); ++i)
        for (std::size_t j = 0; j < arcs.size(); ++j) {
            if (i == j || !disjoint(arcs[i], arcs[j])) continue;
            const auto& a = arcs[i];
            const auto& b = arcs[j];
            if (detail::at(code, a.first).role != Role::Over) continue;  // each bigon listed once
            if (detail::r2_pairs_ok(detail::at(code, a.first), detail::at(code, a.second), detail::at(code, b.first),
                                    detail::at(code, b.second)))
                out.push_back({MoveKind::R2Delete, {a.first, b.first}, {}});
        }
    for (std::size_t i = 0; i < arcs.size(); ++i)
        for (std::size_t j = i + 1; j < arcs.size(); ++j) {
            if (!disjoint(arcs[i], arcs[j])) continue;
            for (std::size_t k = j + 1; k < arcs.size(); ++k) {
                if (!disjoint(arcs[i], arcs[k]) || !disjoint(arcs[j], arcs[k])) continue;
                if (detail::r3_arcs_ok(code, {arcs[i], arcs[j], arcs[k]}))
                    out.push_back({MoveKind::R3Slide, {arcs[i].first, arcs[j].first, arcs[k].first}, {}});
            }
        }
    return out;
}

struct Walk {
    std::vector<KnotoidCode> codes;
    std::vector<MoveSpec> moves;
};

/// Seeded walk; each step draws uniformly among applicable moves within max_crossings and
/// repeats the current code when none applies.
inline Walk walk(const KnotoidCode& code, int steps, std::uint64_t seed, int max_crossings) {
    std::mt19937_64 rng(seed);
    Walk w;
    w.codes.push_back(code);
    for (int s = 0; s < steps; ++s) {
        const auto moves = applicable_moves(w.codes.back(), max_crossings);
        if (moves.empty()) {
            w.codes.push_back(w.codes.back());
            continue;
        }
        const auto& m = moves[rng() % moves.size()];
        w.codes.push_back(apply(w.codes.back(), m));
        w.moves.push_back(m);
    }
    return w;
}

inline std::vector<KnotoidCode> random_walk(const KnotoidCode& code, int steps, std::uint64_t seed, int max_crossings) {
    return walk(code, steps, seed, max_crossings).codes;
}

}  // namespace knotoid
