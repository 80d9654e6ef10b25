#include <gtest/gtest.h>

#include <random>

#include <knotoid/catalog.hpp>

#include "support/oracles.hpp"
#include "support/random_codes.hpp"

using namespace knotoid;
namespace kt = knotoid::testing;

TEST(Closure, Shapes) {
    auto c = virtual_closure(parse("open: O1+ U2- U1+ O2-"));
    ASSERT_EQ(c.components.size(), 1u);
    EXPECT_EQ(c.components[0].kind, ComponentKind::Loop);
    EXPECT_EQ(serialize(c), "loop: O1+ U2- U1+ O2-");
    EXPECT_THROW(virtual_closure(parse("loop: O1+ U1+")), Error);
    EXPECT_EQ(virtual_closure(parse("open: O1+\nloop: U1+")).leg_count(), 0u);
}

namespace {

void check_identities(const KnotoidCode& c, bool classical) {
    const auto k = virtual_closure(c);
    EXPECT_EQ(normalized_bracket(k).normalized, normalized_bracket(c).normalized) << serialize(c);
    EXPECT_EQ(affine_index(k), affine_index(c)) << serialize(c);
    EXPECT_EQ(arrow_polynomial(k), arrow_polynomial(c).lambda_to_k()) << serialize(c);
    if (classical) {
        EXPECT_EQ(parity_bracket(k), parity_bracket(c)) << serialize(c);
    }
}

}  // namespace

TEST(Closure, IdentitiesOnCatalog) {
    for (const auto& e : load_catalog()) {
        if (!e.code.is_single_leg()) continue;
        check_identities(e.code, e.declared_classical);
    }
}

TEST(Closure, IdentitiesOnRandomCodes) {
    std::mt19937_64 rng(91);
    for (int i = 0; i < 200; ++i) {
        const int n = kt::random_size(rng, 0, 8);
        if (i % 2 == 0) check_identities(kt::random_classical_leg(rng, n), true);
        else check_identities(kt::random_leg(rng, n), false);
    }
}

TEST(Closure, ParityBracketCanDifferOffClassical) {
    // the leg's endpoints keep a graph node alive that the closure resolves
    auto c = parse("open: O1+ U2- U1+ O2-");
    EXPECT_FALSE(parity_bracket(c).graph_free());
    EXPECT_EQ(normalized_bracket(virtual_closure(c)).normalized, LaurentA(1));
}

TEST(Genus, MatchesRibbonOracle) {
    EXPECT_EQ(carter_genus(trivial_knotoid()), 0);
    EXPECT_EQ(carter_genus(parse("open: O1+ U1+")), 0);
    EXPECT_EQ(carter_genus(parse("open: O1+ U2- U1+ O2-")), 1);
    std::mt19937_64 rng(92);
    for (int i = 0; i < 500; ++i) {
        auto c = kt::random_leg(rng, kt::random_size(rng, 0, 10));
        EXPECT_EQ(carter_genus(c), kt::RibbonModel(c).genus()) << serialize(c);
    }
    EXPECT_THROW(carter_genus(parse("loop: O1+ U1+")), Error);
}

TEST(Genus, DependsOnFlatCurveOnly) {
    std::mt19937_64 rng(93);
    for (int i = 0; i < 200; ++i) {
        auto c = kt::random_leg(rng, kt::random_size(rng, 0, 8));
        EXPECT_EQ(carter_genus(kt::mirror(c)), carter_genus(c));
        EXPECT_EQ(carter_genus(reverse(c)), carter_genus(c));
    }
}

TEST(Height, Bounds) {
    auto h = height_bounds(parse("open: OA+ OB+ UC+ UD+ UA+ OE+ UF+ OD+ UB+ UE+ OF+ OC+"));
    EXPECT_EQ(h.affine_bound, 2);
    EXPECT_EQ(h.lambda_bound, 2);
    EXPECT_EQ(h.lower, 2);
    for (int n = 1; n <= 4; ++n) {
        auto s = height_bounds(spiral(n, std::vector<int>(2 * n, 1)));
        EXPECT_EQ(s.lower, n);
    }
    auto f = parse("meta declared_height=1..2\nmeta declared_classical=true\nopen: O1+ U2+ U1+ O2+ U3+ U4+ O5+ O3+ U5+ O4+");
    auto fb = height_bounds(f);
    EXPECT_EQ(fb.lower, 1);
    EXPECT_EQ(fb.declared_upper, 2);
    EXPECT_TRUE(fb.consistent());
    EXPECT_FALSE(fb.formal);
    EXPECT_TRUE(height_bounds(parse("open: O1+ U2- U1+ O2-")).formal);
    EXPECT_THROW(height_bounds(parse("loop: O1+ U1+")), Error);
}

TEST(Height, LowerBoundBelowDiagramHeight) {
    std::mt19937_64 rng(94);
    for (int i = 0; i < 300; ++i) {
        auto c = kt::random_classical_leg(rng, kt::random_size(rng, 0, 8));
        EXPECT_LE(height_bounds(c).lower, kt::RibbonModel(c).height()) << serialize(c);
    }
}
