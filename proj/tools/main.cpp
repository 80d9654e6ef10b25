// knotoid: command-line front end for the knotoid invariant library.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <knotoid/knotoid.hpp>

namespace {

using json = nlohmann::ordered_json;
using namespace knotoid;

struct Options {
    std::string code;
    std::string file;
    std::string catalog_id;
    std::string catalog_dir = default_catalog_dir();
    std::string format = "text";
    int state_limit = default_state_limit;
    bool timing = false;
    bool chart = false;
    std::uint64_t seed = 1;
    int steps = 20;
    int max_crossings = 12;
    std::string verify_id;
};

KnotoidCode load_input(const Options& o) {
    const int given = !o.code.empty() + !o.file.empty() + !o.catalog_id.empty();
    if (given != 1) throw Error(ErrorKind::Usage, "give exactly one of --code, --file, --catalog");
    if (!o.code.empty()) {
        std::string text = o.code;
        for (char& c : text)
            if (c == ';') c = '\n';
        return parse(text);
    }
    if (!o.file.empty()) {
        std::ifstream in(o.file);
        if (!in) throw Error(ErrorKind::Usage, "cannot read " + o.file);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }
    const auto cat = load_catalog(o.catalog_dir);
    return find_entry(cat, o.catalog_id).code;
}

/// Text form: one "key: value" line per scalar, nested objects indented, arrays as rows.
void print_text(const json& j, std::ostream& out, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        if (v.is_object()) {
            out << pad << it.key() << ":\n";
            print_text(v, out, indent + 2);
        } else if (v.is_array()) {
            out << pad << it.key() << ":\n";
            for (const auto& row : v) {
                if (row.is_object()) {
                    out << pad << "  -";
                    for (auto r = row.begin(); r != row.end(); ++r)
                        out << ' ' << r.key() << '=' << (r.value().is_string() ? r.value().get<std::string>() : r.value().dump());
                    out << '\n';
                } else {
                    out << pad << "  - " << (row.is_string() ? row.get<std::string>() : row.dump()) << '\n';
                }
            }
        } else {
            out << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        }
    }
}

void emit(const Options& o, const json& j) {
    if (o.format == "json") std::cout << j.dump(2) << '\n';
    else print_text(j, std::cout);
}

template <class F>
json guarded(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        return json{{"unavailable", std::string(to_string(e.kind()))}};
    }
}

json bracket_json(const KnotoidCode& c, int limit) {
    auto r = normalized_bracket(c, limit);
    return {{"raw", r.raw.to_string()}, {"writhe", r.writhe}, {"normalized", r.normalized.to_string()}};
}

json arrow_json(const KnotoidCode& c, int limit) {
    auto raw = arrow_polynomial(c, limit);
    auto deg = arrow_degrees(raw);
    return {{"raw", raw.to_string()},
            {"normalized", writhe_normalize(raw, writhe(c)).to_string()},
            {"k_degree", deg.k_degree},
            {"lambda_degree", deg.lambda_degree}};
}

json chart_json(const WeightChart& chart) {
    json rows = json::array();
    for (const auto& r : chart.rows)
        rows.push_back({{"crossing", r.label},
                        {"sign", r.sign > 0 ? "+" : "-"},
                        {"parity", std::string(to_string(r.parity))},
                        {"a", r.a},
                        {"b", r.b},
                        {"w_plus", r.w_plus},
                        {"w_minus", r.w_minus},
                        {"weight", r.w_selected}});
    return rows;
}

json affine_json(const KnotoidCode& c) {
    auto p = affine_index(c);
    return {{"polynomial", p.to_string()}, {"symmetric", is_symmetric(p)}, {"max_degree", max_degree(p)}};
}

json parity_json(const KnotoidCode& c, int limit) {
    return {{"raw", parity_bracket(c, limit).to_string()},
            {"normalized", normalized_parity_bracket(c, limit).to_string()},
            {"flat", flat_parity_bracket(flat_projection(c), limit).to_string()}};
}

json odd_json(const KnotoidCode& c) {
    auto r = odd_writhe(c);
    json odd = json::array();
    for (const auto& s : r.odd_crossings) odd.push_back(s);
    json parities = json::array();
    for (const auto& info : classify_crossings(c))
        parities.push_back({{"crossing", info.label}, {"sign", info.sign > 0 ? "+" : "-"}, {"parity", std::string(to_string(info.parity))}});
    return {{"value", r.value}, {"odd_crossings", odd}, {"crossings", parities}};
}

json height_json(const KnotoidCode& c, int limit) {
    auto h = height_bounds(c, limit);
    json j{{"affine_bound", h.affine_bound}, {"lambda_bound", h.lambda_bound}, {"lower", h.lower}};
    j["declared_upper"] = h.declared_upper ? json(*h.declared_upper) : json(nullptr);
    j["formal"] = h.formal;
    j["consistent"] = h.consistent();
    return j;
}

json virtuality_json(const KnotoidCode& c, int limit) {
    auto v = detect_virtuality(c, limit);
    return {{"affine_asymmetric", v.affine_asymmetric},
            {"k_degree_positive", v.k_degree_positive},
            {"irreducible_parity_graph", v.irreducible_parity_graph},
            {"verdict", v.verdict()}};
}

json input_json(const KnotoidCode& c) {
    return {{"code", serialize_inline(c)},
            {"crossings", c.crossing_count()},
            {"components", c.components.size()}};
}

json invariants_json(const KnotoidCode& c, int limit) {
    json j{{"input", input_json(c)}};
    j["bracket"] = bracket_json(c, limit);
    j["arrow"] = arrow_json(c, limit);
    j["affine"] = guarded([&] { return affine_json(c); });
    j["odd_writhe"] = odd_json(c);
    j["parity_bracket"] = parity_json(c, limit);
    j["genus"] = guarded([&] { return json(carter_genus(c)); });
    j["height_bounds"] = guarded([&] { return height_json(c, limit); });
    j["virtuality"] = virtuality_json(c, limit);
    // proper-knotoid evidence: each flag rules out a knot-type knotoid
    const bool odd = odd_writhe(c).value != 0;
    bool affine = false;
    if (c.is_single_component()) affine = !affine_index(c).is_zero();
    const bool lambda = arrow_polynomial(c, limit).lambda_degree() > 0;
    j["proper_evidence"] = {{"nonzero_odd_writhe", odd},
                            {"nonzero_affine_index", affine},
                            {"positive_lambda_degree", lambda},
                            {"proper", odd || affine || lambda}};
    return j;
}

json move_json(const MoveSpec& m) {
    json sites = json::array();
    for (const auto& s : m.sites) sites.push_back({{"component", s.component}, {"index", s.index}});
    json j{{"kind", std::string(to_string(m.kind))}, {"sites", sites}};
    if (!m.inserted.empty()) {
        ComponentCode tmp{ComponentKind::OpenLeg, m.inserted};
        j["inserted"] = serialize_component(tmp).substr(6);
    }
    return j;
}

json catalog_list_json(const std::vector<CatalogEntry>& cat) {
    json rows = json::array();
    for (const auto& e : cat)
        rows.push_back({{"id", e.id},
                        {"source", std::string(to_string(e.source))},
                        {"crossings", e.code.crossing_count()},
                        {"classical", e.declared_classical},
                        {"quarantined", e.quarantined}});
    return {{"entries", rows}};
}

json verify_json(const std::vector<VerifyReport>& reports, bool& hard_fail) {
    json rows = json::array();
    int passed = 0, failed = 0, quarantined = 0;
    for (const auto& r : reports) {
        json items = json::array();
        for (const auto& i : r.items)
            items.push_back({{"invariant", i.invariant},
                             {"ok", i.ok},
                             {"expected", i.expected},
                             {"actual", i.actual},
                             {"citation", i.citation}});
        const std::string status = r.ok() ? "pass" : (r.quarantined ? "quarantined" : "fail");
        if (r.ok()) ++passed;
        else if (r.quarantined) ++quarantined;
        else ++failed;
        rows.push_back({{"id", r.id}, {"source", std::string(to_string(r.source))}, {"status", status}, {"checks", items}});
    }
    hard_fail = failed > 0;
    return {{"summary", {{"pass", passed}, {"fail", failed}, {"quarantined", quarantined}}}, {"entries", rows}};
}

void add_input_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--code", o.code, "code text; ';' separates lines");
    cmd->add_option("--file", o.file, "file holding a code");
    cmd->add_option("--catalog", o.catalog_id, "catalog entry id");
    cmd->add_option("--catalog-dir", o.catalog_dir, "catalog directory");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Knotoid invariants: bracket, arrow, affine index, parity bracket, odd writhe, genus, height bounds"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--state-limit", o.state_limit, "largest crossing count to expand");
    app.add_flag("--timing", o.timing, "append wall-clock timing (json only)");

    struct Cmd {
        const char* name;
        const char* help;
    };
    const std::vector<Cmd> code_cmds = {
        {"validate", "check a code and echo its canonical form"},
        {"invariants", "every invariant plus proper and virtuality evidence"},
        {"bracket", "bracket and normalized bracket"},
        {"arrow", "arrow polynomial and its degrees"},
        {"affine", "affine index polynomial"},
        {"parity-bracket", "parity bracket, normalized and flat"},
        {"odd-writhe", "odd writhe and crossing parities"},
        {"genus", "ribbon genus of the diagram"},
        {"closure", "virtual closure and its invariants"},
        {"height-bounds", "lower bounds on the height"},
    };
    std::map<std::string, CLI::App*> cmds;
    for (const auto& c : code_cmds) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_input_options(sub, o);
        cmds[c.name] = sub;
    }
    cmds["affine"]->add_flag("--chart", o.chart, "also print the weight chart");

    auto* moves = app.add_subcommand("moves", "move rewriting");
    moves->require_subcommand(1);
    auto* walk_cmd = moves->add_subcommand("walk", "seeded random move walk");
    add_input_options(walk_cmd, o);
    walk_cmd->add_option("--seed", o.seed, "random seed");
    walk_cmd->add_option("--steps", o.steps, "number of steps")->check(CLI::NonNegativeNumber);
    walk_cmd->add_option("--max", o.max_crossings, "crossing cap");

    auto* catalog = app.add_subcommand("catalog", "fixture catalog");
    catalog->require_subcommand(1);
    auto* cat_list = catalog->add_subcommand("list", "list entries");
    auto* cat_verify = catalog->add_subcommand("verify", "recompute expected invariants");
    for (auto* sub : {cat_list, cat_verify}) sub->add_option("--catalog-dir", o.catalog_dir, "catalog directory");
    cat_verify->add_option("--id", o.verify_id, "verify a single entry");

    auto fail = [&](const std::string& kind, const std::string& message) {
        json err{{"error", {{"kind", kind}, {"message", message}}}};
        (o.format == "json" ? std::cout : std::cerr) << err.dump() << '\n';
        return 1;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("UsageError", e.what());
    }

    const auto start = std::chrono::steady_clock::now();
    const int limit = o.state_limit;
    try {
        json out;
        int code = 0;
        auto is = [&](const char* n) { return cmds.count(n) && cmds[n]->parsed(); };
        if (walk_cmd->parsed()) {
            const auto w = walk(load_input(o), o.steps, o.seed, o.max_crossings);
            json traj = json::array();
            for (std::size_t i = 0; i < w.codes.size(); ++i) traj.push_back(serialize_inline(w.codes[i]));
            json mv = json::array();
            for (const auto& m : w.moves) mv.push_back(move_json(m));
            out = {{"seed", o.seed}, {"steps", o.steps}, {"max", o.max_crossings}, {"trajectory", traj}, {"moves", mv}};
        } else if (cat_list->parsed()) {
            out = catalog_list_json(load_catalog(o.catalog_dir));
        } else if (cat_verify->parsed()) {
            std::vector<VerifyReport> reports;
            for (const auto& e : load_catalog(o.catalog_dir))
                if (o.verify_id.empty() || e.id == o.verify_id) reports.push_back(verify_entry(e, limit));
            if (reports.empty()) throw Error(ErrorKind::Usage, "no catalog entry '" + o.verify_id + "'");
            bool hard_fail = false;
            out = verify_json(reports, hard_fail);
            code = hard_fail ? 1 : 0;
        } else {
            const KnotoidCode c = load_input(o);
            if (is("validate")) out = {{"valid", true}, {"input", input_json(c)}, {"canonical", serialize(c)}};
            else if (is("invariants")) out = invariants_json(c, limit);
            else if (is("bracket")) out = bracket_json(c, limit);
            else if (is("arrow")) out = arrow_json(c, limit);
            else if (is("affine")) {
                out = affine_json(c);
                if (o.chart || o.format == "json") out["chart"] = chart_json(weight_chart(c));
            } else if (is("parity-bracket")) out = parity_json(c, limit);
            else if (is("odd-writhe")) out = odd_json(c);
            else if (is("genus")) out = {{"genus", carter_genus(c)}};
            else if (is("closure")) {
                const auto cl = virtual_closure(c);
                out = {{"closure", serialize_inline(cl)},
                       {"normalized_bracket", normalized_bracket(cl, limit).normalized.to_string()},
                       {"normalized_arrow", normalized_arrow(cl, limit).to_string()},
                       {"affine", guarded([&] { return json(affine_index(cl).to_string()); })},
                       {"parity_bracket", parity_bracket(cl, limit).to_string()}};
            } else if (is("height-bounds")) out = height_json(c, limit);
        }
        if (o.timing) {
            const auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
            out["timing_ms"] = static_cast<double>(us.count()) / 1000.0;
        }
        emit(o, out);
        return code;
    } catch (const Error& e) {
        return fail(std::string(to_string(e.kind())), e.what());
    }
}
