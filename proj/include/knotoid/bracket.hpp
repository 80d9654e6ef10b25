#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "code.hpp"
#include "poly.hpp"
#include "smoothing.hpp"

namespace knotoid {

struct BracketReport {
    LaurentA raw;
    int writhe = 0;
    LaurentA normalized;
};

inline int writhe(const KnotoidCode& code) {
    int w = 0;
    for (const auto& comp : code.components)
        for (const auto& p : comp.passages)
            if (p.role == Role::Over) w += p.sign;
    return w;
}

/// Sum over states of A^sigma d^(components - 1).
inline LaurentA bracket(const KnotoidCode& code, int limit = default_state_limit) {
    StateEngine eng(diagram_of(code));
    const int n = eng.crossings();
    detail::check_limit(n, limit);
    std::map<std::pair<int, int>, long long> tally;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        eng.set_smoothing(bits);
        ++tally[{eng.sigma(), eng.component_count() - 1}];
    }
    LaurentA out;
    for (const auto& [key, count] : tally) out += loop_power(key.second).scale_by_monomial(count, key.first);
    return out;
}

inline BracketReport normalized_bracket(const KnotoidCode& code, int limit = default_state_limit) {
    BracketReport r;
    r.raw = bracket(code, limit);
    r.writhe = writhe(code);
    r.normalized = writhe_normalize(r.raw, r.writhe);
    return r;
}

namespace detail {

/// Skein recursion on a port-splicing graph. The A-smoothing is read off the rotation at each
/// crossing: listing the slots counterclockwise from the incoming over half-edge as t0..t3,
/// the A-channel joins t0 with t3 and t1 with t2.
class SkeinOracle {
public:
    explicit SkeinOracle(const KnotoidCode& code) : d_(diagram_of(code)), g_(port_graph(d_)) {}

    LaurentA run() {
        std::vector<int> link = g_.arc;
        return expand(0, link, 0);
    }

private:
    std::array<int, 4> slots_from_over_in(int c) const {
        const int l = d_.cross_pass[c][0];
        const int r = d_.cross_pass[c][1];
        const std::array<int, 4> ccw{PortGraph::in(l), PortGraph::in(r), PortGraph::out(l), PortGraph::out(r)};
        const int shift = d_.cross_sign[c] > 0 ? 0 : 1;
        return {ccw[shift], ccw[(shift + 1) % 4], ccw[(shift + 2) % 4], ccw[(shift + 3) % 4]};
    }

    static void splice(std::vector<int>& link, int a, int b, int& circles) {
        const int x = link[a];
        const int y = link[b];
        if (x == b) {
            ++circles;
            return;
        }
        link[x] = y;
        link[y] = x;
    }

    LaurentA expand(int c, std::vector<int>& link, int circles) {
        if (c == d_.crossings()) {
            const int comps = circles + g_.legs + g_.empty_loops;
            return loop_power(comps - 1);
        }
        const auto t = slots_from_over_in(c);
        LaurentA total;
        for (int pass = 0; pass < 2; ++pass) {
            std::vector<int> next = link;
            int k = circles;
            if (pass == 0) {
                splice(next, t[0], t[3], k);
                splice(next, t[1], t[2], k);
            } else {
                splice(next, t[0], t[1], k);
                splice(next, t[2], t[3], k);
            }
            total += expand(c + 1, next, k).scale_by_monomial(1, pass == 0 ? 1 : -1);
        }
        return total;
    }

    Diagram d_;
    PortGraph g_;
};

}  // namespace detail

inline LaurentA bracket_oracle(const KnotoidCode& code, int limit = 16) {
    detail::check_limit(static_cast<int>(code.crossing_count()), limit);
    return detail::SkeinOracle(code).run();
}

}  // namespace knotoid
