#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "code.hpp"
#include "error.hpp"

namespace knotoid {

enum class Smoothing : std::uint8_t { Oriented, Disoriented };
enum class StateLabel : std::uint8_t { A, B };
enum class Side : std::uint8_t { Left, Right };

inline constexpr int default_state_limit = 24;

/// Positive crossing: oriented is A. Negative crossing: disoriented is A.
constexpr StateLabel ab_label(int sign, Smoothing s) {
    return ((s == Smoothing::Oriented) == (sign > 0)) ? StateLabel::A : StateLabel::B;
}

/// Indexed by dense crossing id (first-occurrence order).
using SmoothingChoice = std::vector<Smoothing>;

struct Cusp {
    int position = 0;
    Side side = Side::Left;
};

struct StateComponent {
    bool is_long = false;
    int leg = -1;  ///< leg whose endpoint starts the traversal; -1 for circles
    std::vector<Cusp> cusps;
};

struct StateResolution {
    std::vector<StateComponent> components;
    std::vector<StateLabel> labels;
    int sigma = 0;

    int long_count() const {
        int n = 0;
        for (const auto& c : components) n += c.is_long ? 1 : 0;
        return n;
    }
};

/// Half-edge ("port") structure of a diagram. Passage p owns ports 2p (in) and 2p+1 (out);
/// leg k owns endpoint ports tail = 2P+2k and head = 2P+2k+1.
struct PortGraph {
    int passages = 0;
    int legs = 0;
    int empty_loops = 0;
    std::vector<int> arc;       ///< the other end of the arc leaving a port
    std::vector<int> leg_of;    ///< leg index per component, -1 for loops

    int ports() const { return static_cast<int>(arc.size()); }
    int tail(int leg) const { return 2 * passages + 2 * leg; }
    int head(int leg) const { return 2 * passages + 2 * leg + 1; }
    bool is_endpoint(int port) const { return port >= 2 * passages; }

    static int in(int p) { return 2 * p; }
    static int out(int p) { return 2 * p + 1; }
    static int passage(int port) { return port >> 1; }
};

inline PortGraph port_graph(const Diagram& d) {
    PortGraph g;
    g.passages = d.passages();
    g.legs = d.legs();
    g.arc.assign(static_cast<std::size_t>(2 * g.passages + 2 * g.legs), -1);
    auto link = [&](int a, int b) {
        g.arc[a] = b;
        g.arc[b] = a;
    };
    int leg = 0;
    for (const auto& c : d.comps) {
        if (c.kind == ComponentKind::OpenLeg) {
            g.leg_of.push_back(leg);
            if (c.length == 0) {
                link(g.tail(leg), g.head(leg));
            } else {
                link(g.tail(leg), PortGraph::in(c.offset));
                for (int i = 0; i + 1 < c.length; ++i)
                    link(PortGraph::out(c.offset + i), PortGraph::in(c.offset + i + 1));
                link(PortGraph::out(c.offset + c.length - 1), g.head(leg));
            }
            ++leg;
        } else {
            g.leg_of.push_back(-1);
            if (c.length == 0) {
                ++g.empty_loops;
                continue;
            }
            for (int i = 0; i < c.length; ++i)
                link(PortGraph::out(c.offset + i), PortGraph::in(c.offset + (i + 1) % c.length));
        }
    }
    return g;
}

/// Reusable tracer over all smoothings of one diagram. Not thread-safe; one per worker.
class StateEngine {
public:
    explicit StateEngine(Diagram d) : d_(std::move(d)), g_(port_graph(d_)) {
        junction_.assign(static_cast<std::size_t>(g_.ports()), -1);
        mark_.assign(static_cast<std::size_t>(g_.ports()), 0);
    }

    const Diagram& diagram() const { return d_; }
    const PortGraph& ports() const { return g_; }
    int crossings() const { return d_.crossings(); }

    /// Disoriented crossings are the set bits of `bits` (bit c for dense crossing c).
    void set_smoothing(std::uint64_t bits) {
        bits_ = bits;
        for (int c = 0; c < d_.crossings(); ++c) {
            const int l = d_.cross_pass[c][0];
            const int r = d_.cross_pass[c][1];
            if ((bits >> c) & 1U) {
                join(PortGraph::in(l), PortGraph::in(r));
                join(PortGraph::out(l), PortGraph::out(r));
            } else {
                join(PortGraph::in(l), PortGraph::out(r));
                join(PortGraph::in(r), PortGraph::out(l));
            }
        }
    }

    bool disoriented(int c) const { return (bits_ >> c) & 1U; }

    int sigma() const {
        int s = 0;
        for (int c = 0; c < d_.crossings(); ++c) {
            const auto lab = ab_label(d_.cross_sign[c], disoriented(c) ? Smoothing::Disoriented : Smoothing::Oriented);
            s += lab == StateLabel::A ? 1 : -1;
        }
        return s;
    }

    /// Walks every state component. on_component(is_long, leg) opens a component;
    /// on_cusp(side) reports a cusp in that component's own traversal frame.
    template <class OnComponent, class OnCusp>
    void walk(OnComponent&& on_component, OnCusp&& on_cusp) {
        ++epoch_;
        const int ports = g_.ports();
        for (int leg = 0; leg < g_.legs; ++leg) {
            for (int end : {g_.tail(leg), g_.head(leg)}) {
                if (mark_[end] == epoch_) continue;
                on_component(true, leg);
                mark_[end] = epoch_;
                int cur = g_.arc[end];
                while (!g_.is_endpoint(cur)) cur = step(cur, on_cusp);
                mark_[cur] = epoch_;
            }
        }
        for (int p = 0; p < 2 * g_.passages && p < ports; ++p) {
            if (mark_[p] == epoch_) continue;
            on_component(false, -1);
            int cur = p;
            do cur = step(cur, on_cusp);
            while (cur != p);
        }
        for (int i = 0; i < g_.empty_loops; ++i) on_component(false, -1);
    }

    int component_count() {
        int n = 0;
        walk([&](bool, int) { ++n; }, [](Side) {});
        return n;
    }

    StateResolution resolution() {
        StateResolution res;
        for (int c = 0; c < d_.crossings(); ++c)
            res.labels.push_back(
                ab_label(d_.cross_sign[c], disoriented(c) ? Smoothing::Disoriented : Smoothing::Oriented));
        res.sigma = sigma();
        int position = 0;
        walk(
            [&](bool is_long, int leg) {
                res.components.push_back(StateComponent{is_long, is_long ? leg : -1, {}});
                position = 0;
            },
            [&](Side s) { res.components.back().cusps.push_back(Cusp{position++, s}); });
        return res;
    }

private:
    void join(int a, int b) {
        junction_[a] = b;
        junction_[b] = a;
    }

    /// Arrives at port `cur`, crosses its junction, follows the next arc; returns the port reached.
    template <class OnCusp>
    int step(int cur, OnCusp& on_cusp) {
        mark_[cur] = epoch_;
        const int q = junction_[cur];
        mark_[q] = epoch_;
        const int c = d_.pass_crossing[PortGraph::passage(cur)];
        if (disoriented(c))
            on_cusp(d_.pass_strand[PortGraph::passage(cur)] == 0 ? Side::Right : Side::Left);
        return g_.arc[q];
    }

    Diagram d_;
    PortGraph g_;
    std::vector<int> junction_;
    std::vector<unsigned> mark_;
    unsigned epoch_ = 0;
    std::uint64_t bits_ = 0;
};

namespace detail {

inline void check_limit(int n, int limit) {
    if (n > limit || n > 62)
        throw Error(ErrorKind::LimitExceeded,
                    std::to_string(n) + " crossings exceed the state limit of " + std::to_string(limit));
}

/// Lexicographic order with Oriented < Disoriented: dense crossing 0 is the most significant.
inline std::uint64_t bits_of_index(std::uint64_t k, int n) {
    std::uint64_t bits = 0;
    for (int c = 0; c < n; ++c)
        if ((k >> (n - 1 - c)) & 1U) bits |= std::uint64_t{1} << c;
    return bits;
}

}  // namespace detail

inline StateResolution resolve(const KnotoidCode& code, const SmoothingChoice& choice) {
    StateEngine eng(diagram_of(code));
    if (static_cast<int>(choice.size()) != eng.crossings())
        throw Error(ErrorKind::IncompleteChoice, "choice covers " + std::to_string(choice.size()) + " of " +
                                                     std::to_string(eng.crossings()) + " crossings");
    detail::check_limit(eng.crossings(), 62);
    std::uint64_t bits = 0;
    for (std::size_t c = 0; c < choice.size(); ++c)
        if (choice[c] == Smoothing::Disoriented) bits |= std::uint64_t{1} << c;
    eng.set_smoothing(bits);
    return eng.resolution();
}

/// Label-keyed variant; every crossing label must be present.
inline StateResolution resolve(const KnotoidCode& code, const std::map<std::string, Smoothing>& choice) {
    const auto labels = crossing_labels(code);
    SmoothingChoice dense;
    for (const auto& l : labels) {
        auto it = choice.find(l);
        if (it == choice.end()) throw Error(ErrorKind::IncompleteChoice, "no smoothing for crossing " + l);
        dense.push_back(it->second);
    }
    return resolve(code, dense);
}

/// Streams all 2^n states in lexicographic order without materializing them.
class StateEnumerator {
public:
    explicit StateEnumerator(const KnotoidCode& code, int limit = default_state_limit) : eng_(diagram_of(code)) {
        detail::check_limit(eng_.crossings(), limit);
        total_ = std::uint64_t{1} << eng_.crossings();
    }

    std::uint64_t size() const { return total_; }

    bool next(SmoothingChoice& choice, StateResolution& res) {
        if (k_ >= total_) return false;
        const int n = eng_.crossings();
        const std::uint64_t bits = detail::bits_of_index(k_++, n);
        choice.assign(static_cast<std::size_t>(n), Smoothing::Oriented);
        for (int c = 0; c < n; ++c)
            if ((bits >> c) & 1U) choice[c] = Smoothing::Disoriented;
        eng_.set_smoothing(bits);
        res = eng_.resolution();
        return true;
    }

private:
    StateEngine eng_;
    std::uint64_t total_ = 0;
    std::uint64_t k_ = 0;
};

template <class F>
void enumerate_states(const KnotoidCode& code, F&& f, int limit = default_state_limit) {
    StateEnumerator e(code, limit);
    SmoothingChoice choice;
    StateResolution res;
    while (e.next(choice, res)) f(static_cast<const SmoothingChoice&>(choice), static_cast<const StateResolution&>(res));
}

}  // namespace knotoid
