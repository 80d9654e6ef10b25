#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(KNOTOID_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = ::pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

json run_json(const std::string& args, int expect_status = 0) {
    auto r = run("--format json " + args);
    EXPECT_EQ(r.status, expect_status) << args << "\n" << r.out;
    return json::parse(r.out);
}

}  // namespace

TEST(Cli, KinkInvariantsAreTrivial) {
    auto j = run_json("invariants --code 'open: O1+ U1+'");
    EXPECT_EQ(j["bracket"]["normalized"], "1");
    EXPECT_EQ(j["arrow"]["normalized"], "1");
    EXPECT_EQ(j["affine"]["polynomial"], "0");
    EXPECT_EQ(j["odd_writhe"]["value"], 0);
    EXPECT_EQ(j["parity_bracket"]["normalized"], "1");
    EXPECT_EQ(j["genus"], 0);
    EXPECT_EQ(j["proper_evidence"]["proper"], false);
    EXPECT_EQ(j["virtuality"]["verdict"], "inconclusive");
}

TEST(Cli, AffineOnCatalogEntry) {
    auto j = run_json("affine --catalog fig1g");
    EXPECT_EQ(j["polynomial"], "t^2+2t+2t^-1+t^-2-6");
    auto t = run("affine --catalog fig1g");
    EXPECT_EQ(t.status, 0);
    EXPECT_NE(t.out.find("t^2+2t+2t^-1+t^-2-6"), std::string::npos);
}

TEST(Cli, HeightBoundsOnInterval) {
    auto j = run_json("height-bounds --catalog fig1f");
    EXPECT_EQ(j["lower"], 1);
    EXPECT_EQ(j["declared_upper"], 2);
    EXPECT_EQ(j["consistent"], true);
}

TEST(Cli, ProperEvidence) {
    auto j = run_json("invariants --catalog fig1g");
    EXPECT_EQ(j["proper_evidence"]["nonzero_odd_writhe"], true);
    EXPECT_EQ(j["proper_evidence"]["nonzero_affine_index"], true);
    EXPECT_EQ(j["proper_evidence"]["positive_lambda_degree"], true);
    EXPECT_EQ(j["proper_evidence"]["proper"], true);
}

TEST(Cli, SingleInvariantCommands) {
    EXPECT_EQ(run_json("bracket --code 'open: O1+ U2+ U1+ O2+'")["raw"], "A^2+1-A^-4");
    EXPECT_EQ(run_json("odd-writhe --catalog fig1g")["value"], 4);
    EXPECT_EQ(run_json("genus --catalog fig18_virtual")["genus"], 1);
    EXPECT_EQ(run_json("validate --code 'open: O1+ U1+'")["valid"], true);
    auto c = run_json("closure --catalog kink");
    EXPECT_EQ(c["closure"], "loop: O1+ U1+");
    auto a = run_json("arrow --catalog fig1g");
    EXPECT_EQ(a["lambda_degree"], 2);
    auto p = run_json("parity-bracket --catalog fig18_virtual");
    EXPECT_NE(p["raw"].get<std::string>().find('['), std::string::npos);
}

TEST(Cli, SemicolonSeparatesComponents) {
    auto j = run_json("validate --code 'open: O1+ ; loop: U1+'");
    EXPECT_EQ(j["valid"], true);
}

TEST(Cli, Walk) {
    auto j = run_json("moves walk --code 'open: O1+ U1+' --steps 1 --max 1 --seed 1");
    ASSERT_EQ(j["trajectory"].size(), 2u);
    EXPECT_EQ(j["trajectory"][1], "open:");
    EXPECT_EQ(j["moves"][0]["kind"], "R1_delete");
    auto g = run_json("moves walk --catalog fig1g --steps 20 --seed 7 --max 12");
    EXPECT_EQ(g["trajectory"].size(), 21u);
}

TEST(Cli, ErrorsAreMachineReadable) {
    auto j = run_json("bracket --code 'open: O1+'", 1);
    EXPECT_EQ(j["error"]["kind"], "OddOccurrence");
    EXPECT_FALSE(j["error"]["message"].get<std::string>().empty());
    EXPECT_EQ(run_json("bracket --code 'open: O1+ U1-'", 1)["error"]["kind"], "SignMismatch");
    EXPECT_EQ(run_json("affine --code 'open: O1+ ; loop: U1+'", 1)["error"]["kind"], "ShapeError");
    EXPECT_EQ(run_json("--state-limit 2 bracket --catalog fig1g", 1)["error"]["kind"], "LimitExceeded");
    EXPECT_EQ(run_json("bracket --catalog nope", 1)["error"]["kind"], "UsageError");
    EXPECT_EQ(run_json("frobnicate", 1)["error"]["kind"], "UsageError");
}

TEST(Cli, CatalogCommands) {
    auto l = run_json("catalog list")["entries"];
    ASSERT_TRUE(l.is_array());
    EXPECT_GE(l.size(), 15u);
    auto v = run_json("catalog verify");
    EXPECT_EQ(v["summary"]["quarantined"], 1);
    EXPECT_EQ(v["summary"]["fail"], 0);
    auto one = run_json("catalog verify --id fig1g");
    EXPECT_EQ(one["summary"]["pass"], 1);
}

TEST(Cli, Deterministic) {
    for (const char* args : {"--format json invariants --catalog fig1g", "invariants --catalog fig17_k1",
                             "--format json moves walk --catalog fig1g --steps 20 --seed 3 --max 12",
                             "--format json catalog verify"}) {
        auto a = run(args), b = run(args);
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_FALSE(a.out.empty()) << args;
    }
}
