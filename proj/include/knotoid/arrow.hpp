#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "bracket.hpp"
#include "code.hpp"
#include "poly.hpp"
#include "smoothing.hpp"

namespace knotoid {

struct ReducedComponent {
    bool is_long = false;
    int reduced_cusp_count = 0;
};

/// Free reduction of a side word (adjacent equal letters cancel); circles also cancel across the seam.
inline ReducedComponent reduce_cusps(const std::vector<Side>& word, bool is_long) {
    std::vector<Side> stack;
    stack.reserve(word.size());
    for (Side s : word) {
        if (!stack.empty() && stack.back() == s) stack.pop_back();
        else stack.push_back(s);
    }
    std::size_t lo = 0, hi = stack.size();
    if (!is_long)
        while (hi - lo >= 2 && stack[lo] == stack[hi - 1]) {
            ++lo;
            --hi;
        }
    return ReducedComponent{is_long, static_cast<int>(hi - lo)};
}

inline ReducedComponent reduce_cusps(const StateComponent& comp) {
    std::vector<Side> word;
    word.reserve(comp.cusps.size());
    for (const auto& c : comp.cusps) word.push_back(c.side);
    return reduce_cusps(word, comp.is_long);
}

/// Oriented state sum: A^sigma d^(components - 1) times K_i per reduced circle and
/// Lambda_i per reduced long segment carrying 2i cusps.
inline ArrowPoly arrow_polynomial(const KnotoidCode& code, int limit = default_state_limit) {
    StateEngine eng(diagram_of(code));
    const int n = eng.crossings();
    detail::check_limit(n, limit);

    // key: (sigma, d exponent, circle halves sorted, long halves sorted)
    using Key = std::tuple<int, int, std::vector<int>, std::vector<int>>;
    std::map<Key, long long> tally;
    std::vector<Side> stack;
    std::vector<int> circles, longs;
    bool cur_long = false;
    int comps = 0;

    auto close = [&]() {
        if (comps == 0) return;
        std::size_t lo = 0, hi = stack.size();
        if (!cur_long)
            while (hi - lo >= 2 && stack[lo] == stack[hi - 1]) {
                ++lo;
                --hi;
            }
        const int half = static_cast<int>(hi - lo) / 2;
        if (half > 0) (cur_long ? longs : circles).push_back(half);
        stack.clear();
    };

    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        eng.set_smoothing(bits);
        circles.clear();
        longs.clear();
        stack.clear();
        comps = 0;
        eng.walk(
            [&](bool is_long, int) {
                close();
                cur_long = is_long;
                ++comps;
            },
            [&](Side s) {
                if (!stack.empty() && stack.back() == s) stack.pop_back();
                else stack.push_back(s);
            });
        close();
        std::sort(circles.begin(), circles.end());
        std::sort(longs.begin(), longs.end());
        ++tally[Key{eng.sigma(), comps - 1, circles, longs}];
    }

    ArrowPoly out;
    for (const auto& [key, count] : tally) {
        const auto& [sigma, dexp, circ, lng] = key;
        ArrowMonomial m;
        for (int i : circ) m.mul_k(i);
        for (int i : lng) m.mul_lambda(i);
        out.add(m, loop_power(dexp).scale_by_monomial(count, sigma));
    }
    return out;
}

inline ArrowPoly normalized_arrow(const KnotoidCode& code, int limit = default_state_limit) {
    return writhe_normalize(arrow_polynomial(code, limit), writhe(code));
}

struct ArrowDegrees {
    int k_degree = 0;
    int lambda_degree = 0;
};

inline ArrowDegrees arrow_degrees(const ArrowPoly& p) { return {p.k_degree(), p.lambda_degree()}; }

inline ArrowDegrees arrow_degrees(const KnotoidCode& code, int limit = default_state_limit) {
    return arrow_degrees(arrow_polynomial(code, limit));
}

}  // namespace knotoid
