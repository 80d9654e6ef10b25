#include <gtest/gtest.h>

#include <random>
#include <set>

#include <knotoid/code.hpp>
#include <knotoid/error.hpp>

#include "support/random_codes.hpp"

using namespace knotoid;
namespace kt = knotoid::testing;

namespace {

const char* kFig1g = "open: OA+ OB+ UC+ UD+ UA+ OE+ UF+ OD+ UB+ UE+ OF+ OC+";

ErrorKind kind_of(const std::string& text) {
    try {
        parse(text);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for " << text;
    return ErrorKind::Usage;
}

}  // namespace

TEST(Parse, RoundTripsPrintedCode) {
    auto c = parse(kFig1g);
    EXPECT_EQ(c.crossing_count(), 6u);
    EXPECT_EQ(serialize(c), kFig1g);
    EXPECT_EQ(parse(serialize(c)), c);
}

TEST(Parse, TrivialAndMetadata) {
    auto t = parse("open:");
    EXPECT_TRUE(t.is_single_leg());
    EXPECT_EQ(t.crossing_count(), 0u);
    EXPECT_EQ(t, trivial_knotoid());

    auto m = parse("# comment\nmeta declared_height=1..2\nmeta id=x\nopen: O1+ U1+");
    EXPECT_EQ(m.meta("id").value(), "x");
    EXPECT_EQ(m.declared_height_upper().value(), 2);
    EXPECT_EQ(parse(serialize(m)), m);
}

TEST(Parse, AcceptsUnicodeMinus) {
    EXPECT_EQ(parse("open: O1− U1−"), parse("open: O1- U1-"));
}

TEST(Parse, ErrorKinds) {
    EXPECT_EQ(kind_of("open: O1+"), ErrorKind::OddOccurrence);
    EXPECT_EQ(kind_of("open: O1+ O1+"), ErrorKind::DuplicateRole);
    EXPECT_EQ(kind_of("open: O1+ U1-"), ErrorKind::SignMismatch);
    EXPECT_EQ(kind_of("open: X1+ U1+"), ErrorKind::Syntax);
    EXPECT_EQ(kind_of("open: O1 U1"), ErrorKind::Syntax);
    EXPECT_EQ(kind_of("wobble: O1+ U1+"), ErrorKind::Syntax);
    EXPECT_EQ(kind_of("# nothing"), ErrorKind::Shape);
    EXPECT_EQ(kind_of("open: O1+ O2+ U1+ U3+"), ErrorKind::OddOccurrence);
}

TEST(Parse, MultiComponentAndLoopRotation) {
    auto a = parse("open: O1+\nloop: U1+ O2- U2-");
    EXPECT_EQ(a.components.size(), 2u);
    EXPECT_EQ(a.leg_count(), 1u);
    auto b = parse("open: O1+\nloop: O2- U2- U1+");
    EXPECT_EQ(a, b);  // loops compare up to rotation
    auto c = parse("open: O1+\nloop: O2- U1+ U2-");
    EXPECT_NE(a, c);
    EXPECT_EQ(serialize_inline(a), "open: O1+ ; loop: U1+ O2- U2-");
}

TEST(RandomCodes, RoundTrip) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const int n = kt::random_size(rng, 0, 9);
        auto c = (i % 3 == 0) ? kt::random_leg_and_loop(rng, std::max(n, 1)) : kt::random_leg(rng, n);
        ASSERT_NO_THROW(validate(c));
        EXPECT_EQ(parse(serialize(c)), c);
    }
}

TEST(Reverse, Involution) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        auto c = kt::random_leg(rng, kt::random_size(rng, 0, 8));
        EXPECT_EQ(reverse(reverse(c)), c);
        EXPECT_EQ(reverse(c).crossing_count(), c.crossing_count());
    }
    EXPECT_EQ(serialize(reverse(parse("open: O1+ U2- U1+ O2-"))), "open: O2- U1+ U2- O1+");
}

TEST(Classify, PrintedCodeParities) {
    std::set<std::string> odd, even;
    for (const auto& info : classify_crossings(parse(kFig1g)))
        (info.parity == Parity::Odd ? odd : even).insert(info.label);
    EXPECT_EQ(odd, (std::set<std::string>{"A", "D", "E", "F"}));
    EXPECT_EQ(even, (std::set<std::string>{"B", "C"}));
}

TEST(Classify, PositionsAndSigns) {
    auto infos = classify_crossings(parse("open: O1+ U2- U1+ O2-"));
    ASSERT_EQ(infos.size(), 2u);
    EXPECT_EQ(infos[0].label, "1");
    EXPECT_EQ(infos[0].sign, 1);
    EXPECT_EQ(infos[0].positions[0], (Position{0, 0}));
    EXPECT_EQ(infos[0].positions[1], (Position{0, 2}));
    EXPECT_EQ(infos[1].sign, -1);
}

TEST(Classify, LinkPassagesDoNotCount) {
    // crossing 1 is shared with the loop; crossing 2 on the leg straddles one link passage only
    auto infos = classify_crossings(parse("open: O2+ O1+ U2+\nloop: U1+"));
    for (const auto& info : infos) {
        if (info.label == "1") {
            EXPECT_EQ(info.parity, Parity::Link);
        }
        if (info.label == "2") {
            EXPECT_EQ(info.parity, Parity::Even);
        }
    }
}

TEST(Classify, ParityIsOrientationFree) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        auto c = kt::random_leg(rng, kt::random_size(rng, 1, 8));
        auto a = classify_crossings(c);
        auto b = classify_crossings(reverse(c));
        std::map<std::string, Parity> pa, pb;
        for (const auto& x : a) pa[x.label] = x.parity;
        for (const auto& x : b) pb[x.label] = x.parity;
        EXPECT_EQ(pa, pb);
    }
}

TEST(EvenlyIntersticed, Examples) {
    EXPECT_TRUE(evenly_intersticed(parse("open: O1+ U2+ O3+ U1+ O2+ U3+")));
    EXPECT_TRUE(evenly_intersticed(parse("open: O1+ U1+")));
    EXPECT_TRUE(evenly_intersticed(trivial_knotoid()));
    EXPECT_FALSE(evenly_intersticed(parse(kFig1g)));
    EXPECT_THROW(evenly_intersticed(parse("loop: O1+ U1+")), Error);
}

TEST(FlatProjection, KeepsSequenceAndChirality) {
    auto c = parse("open: O1+ U2- U1+ O2-");
    auto f = flat_projection(c);
    ASSERT_EQ(f.components.size(), 1u);
    ASSERT_EQ(f.components[0].passages.size(), 4u);
    EXPECT_EQ(f.components[0].passages[2], (FlatPassage{"1", 1}));
    // O on a positive crossing and U on a negative one both run left-incoming
    EXPECT_EQ(f.chirality.at("1"), 1);
    EXPECT_EQ(f.chirality.at("2"), 1);
    // crossing changes do not move the flat diagram
    EXPECT_EQ(flat_projection(kt::mirror(c)), f);
}

TEST(Spiral, PatternAndErrors) {
    EXPECT_EQ(serialize(spiral(1, {1, 1})), "open: OA+ UB+ UA+ OB+");
    EXPECT_EQ(serialize(spiral(2, {1, 1, 1, 1})), "open: OA+ OB+ UC+ UB+ UD+ UA+ OD+ OC+");
    EXPECT_EQ(serialize(spiral(3, std::vector<int>(6, 1))), "open: OA+ OB+ OC+ UD+ UC+ UE+ UB+ UF+ UA+ OF+ OE+ OD+");
    try {
        spiral(2, {1, 1, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
    }
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(spiral(n, std::vector<int>(2 * n, -1)).crossing_count(), static_cast<std::size_t>(2 * n));
}

TEST(Diagram, StrandsFollowSignAndRole) {
    auto d = diagram_of(parse("open: O1+ U1+"));
    ASSERT_EQ(d.crossings(), 1);
    EXPECT_EQ(d.pass_strand[0], 0);  // over on a positive crossing runs left-incoming
    EXPECT_EQ(d.pass_strand[1], 1);
    EXPECT_EQ(d.over_passage(0), 0);
    auto e = diagram_of(parse("open: O1- U1-"));
    EXPECT_EQ(e.pass_strand[0], 1);
    EXPECT_EQ(e.over_passage(0), 0);
}
