#include <gtest/gtest.h>

#include <random>

#include <knotoid/bracket.hpp>

#include "support/random_codes.hpp"

using namespace knotoid;
namespace kt = knotoid::testing;

TEST(Bracket, KnownValues) {
    EXPECT_EQ(bracket(trivial_knotoid()), LaurentA(1));
    EXPECT_EQ(bracket(parse("open: O1+ U1+")), LaurentA::monomial(-1, 3));
    EXPECT_EQ(bracket(parse("open: O1- U1-")), LaurentA::monomial(-1, -3));
    EXPECT_EQ(bracket(parse("open: O1+ U2+ U1+ O2+")).to_string(), "A^2+1-A^-4");
    EXPECT_EQ(normalized_bracket(parse("open: O1+ U2+ O3+ U1+ O2+ U3+")).normalized.to_string(), "A^-4+A^-12-A^-16");
    EXPECT_EQ(bracket(parse("loop: O1+ U1+")), LaurentA::monomial(-1, 3));
}

TEST(Bracket, Writhe) {
    EXPECT_EQ(writhe(parse("open: O1+ U2- U1+ O2-")), 0);
    EXPECT_EQ(writhe(parse("open: O1+ U2+ O3+ U1+ O2+ U3+")), 3);
    auto r = normalized_bracket(parse("open: O1- U1-"));
    EXPECT_EQ(r.writhe, -1);
    EXPECT_EQ(r.normalized, LaurentA(1));
}

TEST(Bracket, StateSumMatchesSkeinOracle) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 500; ++i) {
        const int n = kt::random_size(rng, 0, 8);
        auto c = (i % 4 == 3) ? kt::random_leg_and_loop(rng, std::max(n, 1)) : kt::random_leg(rng, n);
        ASSERT_EQ(bracket(c), bracket_oracle(c)) << serialize_inline(c);
    }
}

TEST(Bracket, MirrorInvertsVariable) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        auto c = kt::random_leg(rng, kt::random_size(rng, 0, 8));
        EXPECT_EQ(bracket(kt::mirror(c)), bracket(c).inverted());
    }
}

TEST(Bracket, RelabelingAndKinks) {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        auto c = kt::random_leg(rng, kt::random_size(rng, 0, 7));
        EXPECT_EQ(bracket(kt::relabel(c, rng)), bracket(c));
        // a positive kink appended at the head multiplies by -A^3
        auto k = c;
        k.components[0].passages.push_back({"kink", Role::Over, 1});
        k.components[0].passages.push_back({"kink", Role::Under, 1});
        EXPECT_EQ(bracket(k), bracket(c) * LaurentA::monomial(-1, 3));
        EXPECT_EQ(normalized_bracket(k).normalized, normalized_bracket(c).normalized);
    }
}

TEST(Bracket, LimitExceeded) {
    std::mt19937_64 rng(44);
    auto c = kt::random_leg(rng, 9);
    EXPECT_THROW(bracket(c, 8), Error);
    EXPECT_NO_THROW(bracket(c, 9));
}
