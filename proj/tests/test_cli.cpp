#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lacunary/cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = lacunary::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kFixtures = LACUNARY_FIXTURES;

}  // namespace

TEST(Cli, SternTable) {
    const auto r = run({"stern", "u", "--from", "-4", "--to", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "n,u");
    std::vector<std::string> values;
    while (std::getline(in, line)) values.push_back(line.substr(line.find(',') + 1));
    EXPECT_EQ(values, (std::vector<std::string>{"2", "1", "1", "0", "1", "1", "2", "1", "3"}));
}

TEST(Cli, SternRejectsNegativeForOthers) {
    EXPECT_EQ(run({"stern", "gamma", "--from", "-1", "--to", "3"}).code, 2);
    EXPECT_EQ(run({"stern", "carlitz", "--from", "0", "--to", "3"}).code, 0);
}

TEST(Cli, QSeriesMod2) {
    const auto r = run({"qseries", "--omega", "int:2", "--upto", "8", "--mod2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "{0:1, 2:1}\n");
}

TEST(Cli, QSeriesRational) {
    const auto r = run({"qseries", "--omega", "rat:1/3", "--upto", "40"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "{3:1, 11:-1, 19:-1, 35:-1}\n");
    // non-integer omega needs an explicit window
    EXPECT_EQ(run({"qseries", "--omega", "rat:1/3"}).code, 2);
}

TEST(Cli, Pell) {
    EXPECT_EQ(run({"qseries", "pell", "--omega", "int:7", "--trunc", "128"}).code, 0);
    EXPECT_EQ(run({"qseries", "pell", "--omega", "rat:1/3", "--trunc", "256"}).code, 0);
}

TEST(Cli, ANumber) {
    const auto r = run({"qseries", "anumber", "--omega", "int:0", "--g", "10", "--terms", "20", "--digits", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("1.0000"), std::string::npos) << r.out;
    EXPECT_EQ(run({"qseries", "anumber", "--g", "1"}).code, 2);
}

TEST(Cli, CfExpandJson) {
    const auto r = run({"--json", "cf", "expand", "--lambda", "mersenne", "--eps", "period:0", "--n", "6"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_GE(j.at("quotients").size(), 6u);
    EXPECT_GE(j.at("certified_count").get<int>(), 6);
    for (std::int64_t n = 0; n < 6; ++n) {
        const auto& row = j["quotients"][static_cast<std::size_t>(n)];
        EXPECT_EQ(row.at("index").get<std::int64_t>(), n);
        EXPECT_EQ(lacunary::poly_from_json<lacunary::RationalField>(row.at("Q")), lacunary::q_poly(n));
    }
}

TEST(Cli, JsonIsDeterministic) {
    const std::vector<std::string> args{"--json", "cf", "expand", "--eps", "pre:1+period:0", "--n", "10"};
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const std::vector<std::string> st{"--json", "stern", "alpha", "--to", "50"};
    EXPECT_EQ(run(st).out, run(st).out);
}

TEST(Cli, AutomatonExports) {
    const auto dot = run({"automaton", "build", "--omega", "rat:1/3", "--tag", "f", "--export", "dot"});
    ASSERT_EQ(dot.code, 0) << dot.err;
    EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
    EXPECT_NE(dot.out.find("->"), std::string::npos);

    const auto js = run({"automaton", "build", "--omega", "rat:1/3", "--tag", "signed", "--eps", "period:1,0", "--export", "json"});
    ASSERT_EQ(js.code, 0) << js.err;
    const auto d = lacunary::load_json(js.out);
    const auto direct = lacunary::signed_dfao(lacunary::Dyadic::from_rational(1, 3), lacunary::EpsilonSpec({}, {1, 0}));
    for (std::uint64_t k = 0; k < 4096; ++k) ASSERT_EQ(d.evaluate(k), direct.evaluate(k));

    EXPECT_EQ(run({"automaton", "build", "--omega", "stream:thue-morse"}).code, 2);
}

TEST(Cli, AutomatonVerifyAndAlgrel) {
    EXPECT_EQ(run({"automaton", "verify", "--omega", "rat:-5/9", "--upto", "4096"}).code, 0);
    const auto found = run({"automaton", "algrel", "--omega", "rat:1/3"});
    ASSERT_EQ(found.code, 0) << found.err;
    EXPECT_NE(found.out.find("verified to O(X^"), std::string::npos);
    const auto none = run({"automaton", "algrel", "--omega", "rat:3/7"});
    ASSERT_EQ(none.code, 0) << none.err;
    EXPECT_NE(none.out.find("no relation"), std::string::npos);
}

TEST(Cli, OeisCheck) {
    EXPECT_EQ(run({"oeis-check", "--fixtures", kFixtures}).code, 0);
    EXPECT_EQ(run({"stern", "oeis-check", "--id", "A002487", "--fixtures", kFixtures}).code, 0);

    const auto path = std::filesystem::temp_directory_path() / "lacunary_bad_bfile.txt";
    {
        std::ofstream f(path);
        f << "1 1\n2 1\n3 5\n";
    }
    EXPECT_EQ(run({"oeis-check", "--id", "A002487", "--bfile", path.string()}).code, 1);
    std::filesystem::remove(path);
    EXPECT_EQ(run({"oeis-check", "--id", "A002487", "--bfile", "/nonexistent/b.txt"}).code, 2);
}

TEST(Cli, VerifyQuick) {
    const auto r = run({"--level", "quick", "verify", "all", "--fixtures", kFixtures});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("checks passed"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST(Cli, VerifyModuleFilterAndList) {
    const auto r = run({"verify", "all", "--module", "stern", "--list"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("stern"), std::string::npos);
    EXPECT_EQ(r.out.find("contfrac"), std::string::npos);
    EXPECT_EQ(run({"verify", "all", "--module", "nosuch", "--list"}).code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({"stern", "u", "--to", "3", "--bogus"}).code, 2);
    EXPECT_EQ(run({"qseries", "--omega", "rat:1/0", "--upto", "4"}).code, 2);
    EXPECT_EQ(run({"qseries", "--omega", "int:x", "--upto", "4"}).code, 2);
    EXPECT_EQ(run({"cf", "expand", "--eps", "period:2", "--n", "3"}).code, 2);
    EXPECT_EQ(run({"cf", "expand"}).code, 2);
    EXPECT_EQ(run({"--level", "medium", "verify", "all"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    const auto h = run({"--help"});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE(h.out.find("qseries"), std::string::npos);
}
