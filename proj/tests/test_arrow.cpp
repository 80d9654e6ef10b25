#include <gtest/gtest.h>

#include <random>

#include <knotoid/arrow.hpp>
#include <knotoid/bracket.hpp>
#include <knotoid/closures.hpp>

#include "support/random_codes.hpp"

using namespace knotoid;
namespace kt = knotoid::testing;

namespace {
const char* kFig1g = "open: OA+ OB+ UC+ UD+ UA+ OE+ UF+ OD+ UB+ UE+ OF+ OC+";
const char* kFig1f = "open: O1+ U2+ U1+ O2+ U3+ U4+ O5+ O3+ U5+ O4+";
}  // namespace

TEST(Arrow, PrintedValues) {
    EXPECT_EQ(arrow_polynomial(parse(kFig1g)), parse_poly<ArrowPoly>("A^6-(A^-4-A^4)L_1-(A^-2-A^2)L_2"));
    EXPECT_EQ(arrow_polynomial(parse(kFig1f)), parse_poly<ArrowPoly>("(-A^-5+2A^-1-A^3-A^7)+2(A-A^5)L_1"));
    EXPECT_EQ(arrow_polynomial(trivial_knotoid()), ArrowPoly(LaurentA(1)));
    EXPECT_EQ(normalized_arrow(parse("open: O1+ U1+")), ArrowPoly(LaurentA(1)));
}

TEST(Arrow, Degrees) {
    auto d = arrow_degrees(parse(kFig1g));
    EXPECT_EQ(d.k_degree, 0);
    EXPECT_EQ(d.lambda_degree, 2);
    EXPECT_EQ(arrow_degrees(parse("open: O1+ U2- U1+ O2-")).k_degree, 1);
}

TEST(Arrow, UnitVariablesGiveBracket) {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 300; ++i) {
        const int n = kt::random_size(rng, 0, 8);
        auto c = (i % 4 == 3) ? kt::random_leg_and_loop(rng, std::max(n, 1)) : kt::random_leg(rng, n);
        EXPECT_EQ(arrow_polynomial(c).at_unit_variables(), bracket_oracle(c)) << serialize_inline(c);
    }
}

TEST(Arrow, ClosureSwapsLambdaForK) {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 200; ++i) {
        auto c = kt::random_leg(rng, kt::random_size(rng, 0, 8));
        EXPECT_EQ(arrow_polynomial(virtual_closure(c)), arrow_polynomial(c).lambda_to_k()) << serialize(c);
    }
}

TEST(Arrow, ClassicalHasNoKVariables) {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 200; ++i) {
        auto c = kt::random_classical_leg(rng, kt::random_size(rng, 0, 8));
        EXPECT_EQ(arrow_polynomial(c).k_degree(), 0) << serialize(c);
    }
}

TEST(Arrow, KnotTypeArrowIsBracket) {
    // tail and head share a region, so no Lambda terms appear
    auto trefoil = parse("open: O1+ U2+ O3+ U1+ O2+ U3+");
    EXPECT_EQ(arrow_polynomial(trefoil), ArrowPoly(bracket(trefoil)));
}

TEST(Arrow, MirrorInvertsVariable) {
    std::mt19937_64 rng(55);
    for (int i = 0; i < 100; ++i) {
        auto c = kt::random_leg(rng, kt::random_size(rng, 0, 7));
        auto a = arrow_polynomial(c), m = arrow_polynomial(kt::mirror(c));
        EXPECT_EQ(m.k_degree(), a.k_degree());
        EXPECT_EQ(m.lambda_degree(), a.lambda_degree());
        EXPECT_EQ(m.at_unit_variables(), a.at_unit_variables().inverted());
    }
}
