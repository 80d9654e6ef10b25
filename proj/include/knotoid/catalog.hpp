#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "affine.hpp"
#include "arrow.hpp"
#include "bracket.hpp"
#include "closures.hpp"
#include "code.hpp"
#include "error.hpp"
#include "genus.hpp"
#include "parity.hpp"
#include "parity_bracket.hpp"
#include "poly.hpp"
#include "virtuality.hpp"

#ifndef KNOTOID_DEFAULT_CATALOG_DIR
#define KNOTOID_DEFAULT_CATALOG_DIR "data/catalog"
#endif

namespace knotoid {

enum class Source : std::uint8_t { TextCode, FigureTranscription, Generated };

inline std::string_view to_string(Source s) {
    switch (s) {
        case Source::TextCode: return "TextCode";
        case Source::FigureTranscription: return "FigureTranscription";
        case Source::Generated: return "Generated";
    }
    return "?";
}

struct Expectation {
    std::string value;
    std::string citation;
};

struct CatalogEntry {
    std::string id;
    std::string file;
    KnotoidCode code;
    Source source = Source::FigureTranscription;
    bool declared_classical = false;
    bool declared_knot_type = false;
    std::optional<std::string> declared_height;
    std::map<std::string, Expectation> expected;
    bool quarantined = false;
    std::string note;
};

// ---------------------------------------------------------------------------
// invariant registry shared by verification and the command line

enum class ValueKind : std::uint8_t { Text, LaurentA, Affine, Arrow };

struct InvariantDef {
    ValueKind kind;
    std::function<std::string(const KnotoidCode&, int)> compute;
};

inline const std::map<std::string, InvariantDef>& invariant_registry() {
    static const std::map<std::string, InvariantDef> reg = [] {
        using K = ValueKind;
        auto b = [](bool v) { return std::string(v ? "true" : "false"); };
        std::map<std::string, InvariantDef> r;
        r["crossings"] = {K::Text, [](const KnotoidCode& c, int) { return std::to_string(c.crossing_count()); }};
        r["writhe"] = {K::Text, [](const KnotoidCode& c, int) { return std::to_string(writhe(c)); }};
        r["bracket"] = {K::LaurentA, [](const KnotoidCode& c, int l) { return bracket(c, l).to_string(); }};
        r["normalized_bracket"] = {K::LaurentA,
                                   [](const KnotoidCode& c, int l) { return normalized_bracket(c, l).normalized.to_string(); }};
        r["arrow"] = {K::Arrow, [](const KnotoidCode& c, int l) { return arrow_polynomial(c, l).to_string(); }};
        r["normalized_arrow"] = {K::Arrow, [](const KnotoidCode& c, int l) { return normalized_arrow(c, l).to_string(); }};
        r["k_degree"] = {K::Text, [](const KnotoidCode& c, int l) { return std::to_string(arrow_degrees(c, l).k_degree); }};
        r["lambda_degree"] = {K::Text,
                              [](const KnotoidCode& c, int l) { return std::to_string(arrow_degrees(c, l).lambda_degree); }};
        r["affine"] = {K::Affine, [](const KnotoidCode& c, int) { return affine_index(c).to_string(); }};
        r["affine_symmetric"] = {K::Text, [b](const KnotoidCode& c, int) { return b(is_symmetric(affine_index(c))); }};
        r["odd_writhe"] = {K::Text, [](const KnotoidCode& c, int) { return std::to_string(odd_writhe(c).value); }};
        r["odd_crossings"] = {K::Text, [](const KnotoidCode& c, int) {
                                  std::string out;
                                  for (const auto& s : odd_writhe(c).odd_crossings) out += (out.empty() ? "" : ",") + s;
                                  return out.empty() ? std::string("-") : out;
                              }};
        r["evenly_intersticed"] = {K::Text, [b](const KnotoidCode& c, int) { return b(evenly_intersticed(c)); }};
        r["parity_bracket"] = {K::Text, [](const KnotoidCode& c, int l) { return parity_bracket(c, l).to_string(); }};
        r["normalized_parity_bracket"] = {
            K::Text, [](const KnotoidCode& c, int l) { return normalized_parity_bracket(c, l).to_string(); }};
        r["parity_plain"] = {K::LaurentA, [](const KnotoidCode& c, int l) { return parity_bracket(c, l).plain.to_string(); }};
        r["parity_graph_terms"] = {
            K::Text, [](const KnotoidCode& c, int l) { return std::to_string(parity_bracket(c, l).graphical.size()); }};
        r["flat_parity_bracket"] = {
            K::Text, [](const KnotoidCode& c, int l) { return flat_parity_bracket(flat_projection(c), l).to_string(); }};
        r["genus"] = {K::Text, [](const KnotoidCode& c, int) { return std::to_string(carter_genus(c)); }};
        r["height_affine"] = {K::Text,
                              [](const KnotoidCode& c, int l) { return std::to_string(height_bounds(c, l).affine_bound); }};
        r["height_lambda"] = {K::Text,
                              [](const KnotoidCode& c, int l) { return std::to_string(height_bounds(c, l).lambda_bound); }};
        r["height_lower"] = {K::Text, [](const KnotoidCode& c, int l) { return std::to_string(height_bounds(c, l).lower); }};
        r["closure_normalized_bracket"] = {K::LaurentA, [](const KnotoidCode& c, int l) {
                                               return normalized_bracket(virtual_closure(c), l).normalized.to_string();
                                           }};
        r["closure_normalized_arrow"] = {
            K::Arrow, [](const KnotoidCode& c, int l) { return normalized_arrow(virtual_closure(c), l).to_string(); }};
        r["virtuality"] = {K::Text, [](const KnotoidCode& c, int l) { return detect_virtuality(c, l).verdict(); }};
        return r;
    }();
    return reg;
}

/// Re-renders a polynomial through its parser so fixtures need not be in canonical term order.
inline std::string canonical_value(ValueKind kind, const std::string& text) {
    switch (kind) {
        case ValueKind::Text: return text;
        case ValueKind::LaurentA: return parse_poly<LaurentA>(text).to_string();
        case ValueKind::Affine: return parse_poly<AffinePoly>(text).to_string();
        case ValueKind::Arrow: return parse_poly<ArrowPoly>(text).to_string();
    }
    return text;
}

// ---------------------------------------------------------------------------
// loading

inline std::string default_catalog_dir() {
    if (const char* env = std::getenv("KNOTOID_CATALOG_DIR"); env && *env) return env;
    return KNOTOID_DEFAULT_CATALOG_DIR;
}

inline CatalogEntry entry_from_code(KnotoidCode code, const std::string& fallback_id, const std::string& file = "") {
    auto bad = [&](const std::string& why) { throw Error(ErrorKind::MalformedFixture, file + ": " + why); };
    CatalogEntry e;
    e.file = file;
    e.id = code.meta("id").value_or(fallback_id);
    const std::string src = code.meta("source").value_or("");
    if (src == "TextCode") e.source = Source::TextCode;
    else if (src == "FigureTranscription") e.source = Source::FigureTranscription;
    else if (src == "Generated") e.source = Source::Generated;
    else bad("source must be TextCode, FigureTranscription or Generated");
    e.declared_classical = code.declared_classical();
    e.declared_knot_type = code.declared_knot_type();
    e.declared_height = code.meta("declared_height");
    e.quarantined = code.meta("quarantine").value_or("false") == "true";
    e.note = code.meta("note").value_or("");
    const auto& reg = invariant_registry();
    for (const auto& [key, value] : code.metadata) {
        if (!key.starts_with("expect.")) continue;
        const std::string name = key.substr(7);
        auto it = reg.find(name);
        if (it == reg.end()) bad("unknown invariant '" + name + "'");
        try {
            e.expected[name].value = canonical_value(it->second.kind, value);
        } catch (const Error& err) {
            bad("expected " + name + " does not parse: " + err.what());
        }
        e.expected[name].citation = code.meta("cite." + name).value_or("");
    }
    e.code = std::move(code);
    return e;
}

inline CatalogEntry load_entry(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::MalformedFixture, path.string() + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    KnotoidCode code;
    try {
        code = parse(buf.str());
    } catch (const Error& err) {
        throw Error(ErrorKind::MalformedFixture, path.string() + ": " + err.what());
    }
    return entry_from_code(std::move(code), path.stem().string(), path.string());
}

/// Every *.knotoid file in dir, ordered by id.
inline std::vector<CatalogEntry> load_catalog(const std::string& dir = default_catalog_dir()) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw Error(ErrorKind::MalformedFixture, dir + ": catalog directory not found");
    std::vector<CatalogEntry> out;
    for (const auto& de : fs::directory_iterator(dir))
        if (de.is_regular_file() && de.path().extension() == ".knotoid") out.push_back(load_entry(de.path()));
    std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].id == out[i - 1].id) throw Error(ErrorKind::MalformedFixture, "duplicate catalog id " + out[i].id);
    return out;
}

inline const CatalogEntry& find_entry(const std::vector<CatalogEntry>& cat, const std::string& id) {
    for (const auto& e : cat)
        if (e.id == id) return e;
    throw Error(ErrorKind::Usage, "no catalog entry '" + id + "'");
}

// ---------------------------------------------------------------------------
// verification

struct CheckItem {
    std::string invariant;
    std::string expected;
    std::string actual;
    std::string citation;
    bool ok = false;
};

struct VerifyReport {
    std::string id;
    Source source = Source::FigureTranscription;
    bool quarantined = false;
    std::vector<CheckItem> items;

    bool ok() const {
        return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.ok; });
    }
};

/// Computes every expected invariant; computation errors become failing items.
inline VerifyReport verify_entry(const CatalogEntry& e, int limit = default_state_limit) {
    VerifyReport r;
    r.id = e.id;
    r.source = e.source;
    r.quarantined = e.quarantined;
    const auto& reg = invariant_registry();
    for (const auto& [name, exp] : e.expected) {
        CheckItem item{name, exp.value, "", exp.citation, false};
        try {
            item.actual = reg.at(name).compute(e.code, limit);
            item.ok = item.actual == exp.value;
        } catch (const Error& err) {
            item.actual = std::string(to_string(err.kind())) + ": " + err.what();
        }
        r.items.push_back(std::move(item));
    }
    return r;
}

}  // namespace knotoid
