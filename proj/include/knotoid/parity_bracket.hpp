#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bracket.hpp"
#include "code.hpp"
#include "poly.hpp"
#include "smoothing.hpp"

namespace knotoid {

/// Nodes carry four slots 4v..4v+3 in counterclockwise order; stub s has id 4*nodes + s.
/// partner is a perfect matching on slots and stubs. Node-free curves live in free_components.
struct GraphState {
    int nodes = 0;
    std::vector<int> node_crossing;
    std::vector<int> partner;
    std::vector<std::string> stub_names;
    int free_components = 0;
    int sigma = 0;

    int slot_count() const { return 4 * nodes; }
    bool is_stub(int id) const { return id >= slot_count(); }
    int stub_id(int s) const { return slot_count() + s; }
    static int opposite(int slot) { return (slot & ~3) | ((slot + 2) & 3); }
};

struct ParityBracketValue {
    LaurentA plain;
    std::map<std::string, LaurentA> graphical;

    bool graph_free() const { return graphical.empty(); }
    friend bool operator==(const ParityBracketValue&, const ParityBracketValue&) = default;

    /// "plain + (coefficient)[graph] + ...".
    std::string to_string() const {
        std::string out = plain.is_zero() && !graphical.empty() ? "" : plain.to_string();
        for (const auto& [g, c] : graphical) {
            if (!out.empty()) out += '+';
            out += '(' + c.to_string() + ")[" + g + ']';
        }
        return out;
    }
};

inline ParityBracketValue writhe_normalize(const ParityBracketValue& v, int w) {
    ParityBracketValue r;
    r.plain = writhe_normalize(v.plain, w);
    for (const auto& [g, c] : v.graphical) r.graphical.emplace(g, writhe_normalize(c, w));
    return r;
}

namespace detail {

/// Builds graph states of one diagram: even crossings are smoothed, the others become nodes.
class GraphBuilder {
public:
    explicit GraphBuilder(Diagram d) : d_(std::move(d)), g_(port_graph(d_)), parity_(crossing_parities(d_)) {
        slot_of_.assign(static_cast<std::size_t>(g_.ports()), -1);
        for (int c = 0; c < d_.crossings(); ++c) {
            if (parity_[c] == Parity::Even) {
                even_.push_back(c);
                continue;
            }
            const int v = static_cast<int>(node_crossing_.size());
            node_crossing_.push_back(c);
            const int l = d_.cross_pass[c][0];
            const int r = d_.cross_pass[c][1];
            slot_of_[PortGraph::in(l)] = 4 * v + 0;
            slot_of_[PortGraph::in(r)] = 4 * v + 1;
            slot_of_[PortGraph::out(l)] = 4 * v + 2;
            slot_of_[PortGraph::out(r)] = 4 * v + 3;
            slot_port_.insert(slot_port_.end(),
                              {PortGraph::in(l), PortGraph::in(r), PortGraph::out(l), PortGraph::out(r)});
        }
        junction_.assign(static_cast<std::size_t>(g_.ports()), -1);
        seen_.assign(static_cast<std::size_t>(g_.ports()), 0);
    }

    int even_count() const { return static_cast<int>(even_.size()); }
    const std::vector<Parity>& parities() const { return parity_; }

    /// Bit i of `bits` selects the disoriented smoothing of the i-th even crossing.
    GraphState build(std::uint64_t bits) {
        GraphState s;
        s.nodes = static_cast<int>(node_crossing_.size());
        s.node_crossing = node_crossing_;
        for (std::size_t i = 0; i < even_.size(); ++i) {
            const int c = even_[i];
            const int l = d_.cross_pass[c][0];
            const int r = d_.cross_pass[c][1];
            const bool dis = (bits >> i) & 1U;
            if (dis) {
                join(PortGraph::in(l), PortGraph::in(r));
                join(PortGraph::out(l), PortGraph::out(r));
            } else {
                join(PortGraph::in(l), PortGraph::out(r));
                join(PortGraph::in(r), PortGraph::out(l));
            }
            s.sigma += ab_label(d_.cross_sign[c], dis ? Smoothing::Disoriented : Smoothing::Oriented) == StateLabel::A
                           ? 1
                           : -1;
        }
        ++epoch_;
        // stubs in endpoint order, only those attached to nodes
        std::vector<int> stub_of_end(static_cast<std::size_t>(2 * g_.legs), -1);
        s.partner.assign(static_cast<std::size_t>(4 * s.nodes), -1);
        auto follow = [&](int port) {
            int cur = g_.arc[port];
            while (!g_.is_endpoint(cur) && slot_of_[cur] < 0) {
                seen_[cur] = epoch_;
                const int q = junction_[cur];
                seen_[q] = epoch_;
                cur = g_.arc[q];
            }
            return cur;
        };
        std::vector<std::pair<int, int>> stub_links;
        for (int slot = 0; slot < 4 * s.nodes; ++slot) {
            const int port = slot_port_[slot];
            seen_[port] = epoch_;
            const int end = follow(port);
            if (g_.is_endpoint(end)) stub_links.emplace_back(end, slot);
            else s.partner[slot] = slot_of_[end];
        }
        std::sort(stub_links.begin(), stub_links.end());
        for (const auto& [end, slot] : stub_links) {
            const int e = end - 2 * g_.passages;
            stub_of_end[e] = static_cast<int>(s.stub_names.size());
            s.stub_names.push_back(std::string(e % 2 ? "H" : "T") + std::to_string(e / 2));
        }
        s.partner.resize(static_cast<std::size_t>(4 * s.nodes) + s.stub_names.size(), -1);
        for (const auto& [end, slot] : stub_links) {
            const int id = s.stub_id(stub_of_end[end - 2 * g_.passages]);
            s.partner[slot] = id;
            s.partner[id] = slot;
        }
        // node-free long segments
        for (int e = 0; e < 2 * g_.legs; ++e) {
            const int port = 2 * g_.passages + e;
            if (stub_of_end[e] >= 0 || seen_[port] == epoch_) continue;
            seen_[port] = epoch_;
            seen_[follow(port)] = epoch_;
            ++s.free_components;
        }
        // node-free circles
        for (int p = 0; p < 2 * g_.passages; ++p) {
            if (seen_[p] == epoch_ || slot_of_[p] >= 0) continue;
            int cur = p;
            do {
                seen_[cur] = epoch_;
                const int q = junction_[cur];
                seen_[q] = epoch_;
                cur = g_.arc[q];
            } while (cur != p);
            ++s.free_components;
        }
        s.free_components += g_.empty_loops;
        return s;
    }

private:
    void join(int a, int b) {
        junction_[a] = b;
        junction_[b] = a;
    }

    Diagram d_;
    PortGraph g_;
    std::vector<Parity> parity_;
    std::vector<int> even_;
    std::vector<int> node_crossing_;
    std::vector<int> slot_of_;
    std::vector<int> slot_port_;
    std::vector<int> junction_;
    std::vector<unsigned> seen_;
    unsigned epoch_ = 0;
};

/// Removes the nodes in `dead`, splicing every strand straight through them.
inline GraphState splice_out(const GraphState& s, const std::vector<char>& dead_node) {
    const int total = static_cast<int>(s.partner.size());
    auto dead = [&](int id) { return !s.is_stub(id) && dead_node[id / 4]; };
    std::vector<int> partner = s.partner;
    std::vector<char> used(static_cast<std::size_t>(total), 0);
    GraphState out;
    out.free_components = s.free_components;
    out.sigma = s.sigma;
    for (int p = 0; p < total; ++p) {
        if (dead(p) || !dead(partner[p])) continue;
        int r = partner[p];
        int q;
        for (;;) {
            used[r] = 1;
            const int o = GraphState::opposite(r);
            used[o] = 1;
            q = s.partner[o];
            if (!dead(q)) break;
            r = q;
        }
        partner[p] = q;
        partner[q] = p;
    }
    for (int r = 0; r < s.slot_count(); ++r) {
        if (!dead(r) || used[r]) continue;
        int cur = r;
        do {
            used[cur] = 1;
            const int o = GraphState::opposite(cur);
            used[o] = 1;
            cur = s.partner[o];
        } while (cur != r);
        ++out.free_components;
    }
    // renumber survivors
    std::vector<int> new_node(static_cast<std::size_t>(s.nodes), -1);
    for (int v = 0; v < s.nodes; ++v)
        if (!dead_node[v]) {
            new_node[v] = out.nodes++;
            out.node_crossing.push_back(s.node_crossing[v]);
        }
    std::vector<int> new_stub(s.stub_names.size(), -1);
    for (std::size_t k = 0; k < s.stub_names.size(); ++k) {
        const int id = s.stub_id(static_cast<int>(k));
        if (s.is_stub(partner[id])) {
            if (id < partner[id]) ++out.free_components;
            continue;
        }
        new_stub[k] = static_cast<int>(out.stub_names.size());
        out.stub_names.push_back(s.stub_names[k]);
    }
    auto map_id = [&](int id) {
        if (s.is_stub(id)) return 4 * out.nodes + new_stub[id - s.slot_count()];
        return 4 * new_node[id / 4] + id % 4;
    };
    out.partner.assign(static_cast<std::size_t>(4 * out.nodes) + out.stub_names.size(), -1);
    for (int id = 0; id < total; ++id) {
        if (dead(id)) continue;
        if (s.is_stub(id) && new_stub[id - s.slot_count()] < 0) continue;
        out.partner[map_id(id)] = map_id(partner[id]);
    }
    return out;
}

}  // namespace detail

/// One graph state per smoothing of the even crossings, in lexicographic order.
template <class F>
void parity_states(const KnotoidCode& code, F&& f, int limit = default_state_limit) {
    detail::GraphBuilder b(diagram_of(code));
    const int n = b.even_count();
    detail::check_limit(n, limit);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) f(b.build(detail::bits_of_index(k, n)));
}

/// Finds a pair of distinct nodes bounding a bigon face: shared edges adjacent as (e, b)
/// counterclockwise at one node and as (b, e) at the other.
inline bool find_bigon(const GraphState& s, int& x, int& y) {
    for (int v = 0; v < s.nodes; ++v)
        for (int i = 0; i < 4; ++i) {
            const int p = s.partner[4 * v + i];
            if (s.is_stub(p) || p / 4 == v) continue;
            const int w = p / 4;
            const int k = p % 4;
            if (s.partner[4 * v + (i + 1) % 4] == 4 * w + (k + 3) % 4) {
                x = v;
                y = w;
                return true;
            }
        }
    return false;
}

inline GraphState reduce_graph(GraphState s) {
    int x = -1, y = -1;
    while (find_bigon(s, x, y)) {
        std::vector<char> dead(static_cast<std::size_t>(s.nodes), 0);
        dead[x] = dead[y] = 1;
        s = detail::splice_out(s, dead);
    }
    return s;
}

namespace detail {

inline std::string encode_from(const GraphState& s, int start_node, int start_slot) {
    std::vector<int> idx(static_cast<std::size_t>(s.nodes), -1), ref(static_cast<std::size_t>(s.nodes), 0);
    std::vector<int> order{start_node};
    idx[start_node] = 0;
    ref[start_node] = start_slot;
    std::string out;
    for (std::size_t h = 0; h < order.size(); ++h) {
        const int v = order[h];
        for (int j = 0; j < 4; ++j) {
            const int p = s.partner[4 * v + (ref[v] + j) % 4];
            if (s.is_stub(p)) {
                out += s.stub_names[p - s.slot_count()];
            } else {
                const int w = p / 4;
                if (idx[w] < 0) {
                    idx[w] = static_cast<int>(order.size());
                    ref[w] = p % 4;
                    order.push_back(w);
                }
                out += std::to_string(idx[w]) + '.' + std::to_string(((p % 4) - ref[w] + 4) % 4);
            }
            out += j < 3 ? ',' : ';';
        }
    }
    return out;
}

}  // namespace detail

struct GraphComponents {
    std::vector<std::string> codes;  ///< canonical code per connected node component, sorted
};

/// Canonical codes of the node-carrying components of a reduced state.
inline GraphComponents graph_components(const GraphState& s) {
    std::vector<int> root(static_cast<std::size_t>(s.nodes));
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int v) { return root[v] == v ? v : root[v] = find(root[v]); };
    for (int slot = 0; slot < s.slot_count(); ++slot) {
        const int p = s.partner[slot];
        if (!s.is_stub(p)) root[find(slot / 4)] = find(p / 4);
    }
    std::map<int, std::vector<int>> comps;
    for (int v = 0; v < s.nodes; ++v) comps[find(v)].push_back(v);
    GraphComponents out;
    for (const auto& [r, members] : comps) {
        // stubs touching this component, in name order
        std::string best_stub;
        int stub_slot = -1;
        for (int v : members)
            for (int i = 0; i < 4; ++i) {
                const int p = s.partner[4 * v + i];
                if (!s.is_stub(p)) continue;
                const std::string& name = s.stub_names[p - s.slot_count()];
                if (stub_slot < 0 || name < best_stub) {
                    best_stub = name;
                    stub_slot = 4 * v + i;
                }
            }
        std::string code;
        if (stub_slot >= 0) {
            code = best_stub + ':' + detail::encode_from(s, stub_slot / 4, stub_slot % 4);
        } else {
            bool first = true;
            for (int v : members)
                for (int i = 0; i < 4; ++i) {
                    std::string c = detail::encode_from(s, v, i);
                    if (first || c < code) code = std::move(c);
                    first = false;
                }
        }
        out.codes.push_back("n" + std::to_string(members.size()) + ':' + code);
    }
    std::sort(out.codes.begin(), out.codes.end());
    return out;
}

/// Joined canonical codes; empty for a node-free state.
inline std::string canonical_graph(const GraphState& s) {
    std::string key;
    for (const auto& c : graph_components(s).codes) {
        if (!key.empty()) key += '|';
        key += c;
    }
    return key;
}

namespace detail {

struct ParityTally {
    std::map<std::tuple<int, int, std::string>, long long> counts;
};

inline ParityTally parity_tally(const Diagram& d, int limit) {
    GraphBuilder b(d);
    const int n = b.even_count();
    check_limit(n, limit);
    ParityTally t;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        GraphState s = reduce_graph(b.build(bits));
        const auto comps = graph_components(s);
        std::string key;
        for (const auto& c : comps.codes) {
            if (!key.empty()) key += '|';
            key += c;
        }
        const int total = s.free_components + static_cast<int>(comps.codes.size());
        ++t.counts[{s.sigma, total - 1, key}];
    }
    return t;
}

}  // namespace detail

/// Sum over even-crossing states of A^n(S) d^(components - 1) G(S); every node component
/// counts as one component.
inline ParityBracketValue parity_bracket(const KnotoidCode& code, int limit = default_state_limit) {
    const auto t = detail::parity_tally(diagram_of(code), limit);
    ParityBracketValue v;
    for (const auto& [key, count] : t.counts) {
        const auto& [sigma, dexp, graph] = key;
        LaurentA term = loop_power(dexp).scale_by_monomial(count, sigma);
        if (graph.empty()) {
            v.plain += term;
        } else {
            auto& slot = v.graphical[graph];
            slot += term;
            if (slot.is_zero()) v.graphical.erase(graph);
        }
    }
    return v;
}

inline ParityBracketValue normalized_parity_bracket(const KnotoidCode& code, int limit = default_state_limit) {
    return writhe_normalize(parity_bracket(code, limit), writhe(code));
}

/// The parity bracket at A = -1: each state weighs (-1)^n(S) (-2)^(components - 1).
inline ParityBracketValue flat_parity_bracket(const FlatCode& code, int limit = default_state_limit) {
    const auto t = detail::parity_tally(diagram_of(code), limit);
    std::map<std::string, BigInt> sums;
    for (const auto& [key, count] : t.counts) {
        const auto& [sigma, dexp, graph] = key;
        BigInt w = count;
        if (sigma % 2) w = -w;
        for (int i = 0; i < dexp; ++i) w *= -2;
        sums[graph] += w;
    }
    ParityBracketValue v;
    for (const auto& [graph, c] : sums) {
        if (c == 0) continue;
        if (graph.empty()) v.plain = LaurentA::monomial(c, 0);
        else v.graphical.emplace(graph, LaurentA::monomial(c, 0));
    }
    return v;
}

}  // namespace knotoid
