#include "orbichar/json_io.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>

using namespace orbichar;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = {})
{
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + ORBICHAR_CLI_PATH + "' " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 65536> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string line(const std::string& args)
{
    auto r = run(args);
    EXPECT_EQ(r.exit_code, 0) << args;
    while (!r.out.empty() && r.out.back() == '\n') {
        r.out.pop_back();
    }
    return r.out;
}

} // namespace

TEST(Cli, ChiGoldenValues)
{
    EXPECT_EQ(line(R"(chi --sig '{"genus":0,"cones":[{"order":5,"count":"2"},{"order":10,"count":"1"}]}' --gamma Z^2)"),
              "19");
    EXPECT_EQ(line("chi --sig 'Σ_0()' --gamma Z^9"), "2");
    EXPECT_EQ(line("chi --sig 'Σ_1(2)' --gamma trivial"), "-1/2");
    EXPECT_EQ(line("chi --sig 'Σ_0(5,5,10)' --l 2"), "19");
    EXPECT_EQ(line("chi --sig 'Σ_0(5,5,10)' --seq-len 4"), "-1/2,2,19,149,1249");
    EXPECT_EQ(line("chi --sig 'Σ_0(4,8,8)' --seq-len 4"), "-1/2,2,19,143,1087");
    EXPECT_EQ(line("chi --sig 'Σ_0(5,5,10)' --l 2 --manifold-chi 2"), "38");
}

TEST(Cli, ChiJsonRoundTrips)
{
    const auto j = Json::parse(line("chi --sig 'Σ_2(3×2,7)' --gamma Z+Z/2 --json"));
    EXPECT_EQ(signature_from_json(j.at("signature")), OrbifoldSignature::from_orders(2, {3, 3, 7}));
    EXPECT_EQ(j.at("gamma"), "Z+Z/2");
    EXPECT_TRUE(j.at("value").is_string());
    EXPECT_EQ(j.at("value"), line("chi --sig 'Σ_2(3×2,7)' --gamma Z+Z/2"));
}

TEST(Cli, ConstructBasePair)
{
    const auto j = Json::parse(line("construct --L 2 --g 0 --orders 2"));
    ASSERT_EQ(j.at("family").size(), 2U);
    EXPECT_EQ(signature_from_json(j.at("family")[0]), OrbifoldSignature::from_orders(0, {5, 5, 10}));
    EXPECT_EQ(signature_from_json(j.at("family")[1]), OrbifoldSignature::from_orders(0, {4, 8, 8}));
    EXPECT_TRUE(j.at("verification").at("sequences_equal").get<bool>());
    EXPECT_TRUE(j.at("verification").at("pairwise_distinct").get<bool>());
}

TEST(Cli, ConstructFamilyAndGenus)
{
    const auto j = Json::parse(line("construct --L 3 --g 0 --orders 2,3 --N 4"));
    ASSERT_EQ(j.at("family").size(), 4U);
    const auto seqs = j.at("verification").at("sequences");
    ASSERT_EQ(seqs.size(), 4U);
    for (const auto& s : seqs) {
        EXPECT_EQ(s, seqs[0]);
        EXPECT_EQ(s.size(), 4U);
    }
    const auto g5 = Json::parse(line("construct --L 2 --g 5 --orders 7"));
    for (const auto& m : g5.at("family")) {
        EXPECT_EQ(m.at("genus"), 5);
    }
}

TEST(Cli, ConstructForGammas)
{
    const auto j = Json::parse(line("construct --gamma Z+Z/4 --gamma Z/3 --gamma Z^2 --N 3"));
    ASSERT_EQ(j.at("family").size(), 3U);
    for (const auto& g : j.at("verification").at("chi_gamma")) {
        EXPECT_TRUE(g.at("all_equal").get<bool>());
    }
}

TEST(Cli, ConstructIsDeterministic)
{
    const std::string args = "construct --L 4 --g 1 --avoid-primes 3";
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, Reconstruct)
{
    EXPECT_EQ(line("reconstruct --seq 2,2,2,2 --text"), "Σ_0()");
    EXPECT_EQ(signature_from_json(Json::parse(line("reconstruct --seq 2,2,2,2"))), OrbifoldSignature::from_orders(0, {}));
    EXPECT_EQ(line("reconstruct --seq -1/2,2,19,149,1249,11249 --text"), "Σ_0(5,5,10)");
    const auto insufficient = Json::parse(line("reconstruct --seq -1/2,2,19"));
    EXPECT_EQ(insufficient.at("status"), "insufficient_data");
    EXPECT_EQ(run("reconstruct --seq 1/3,1,1").exit_code, 2);
    EXPECT_EQ(run("reconstruct --seq 1,,2").exit_code, 2);
}

TEST(Cli, Enumerate)
{
    EXPECT_EQ(line("enumerate --chi-es 0 --text"), "Σ_0(2,3,6)\nΣ_0(2,4,4)\nΣ_0(3,3,3)\nΣ_0(2,2,2,2)\nΣ_1()");
    EXPECT_EQ(line("enumerate --chi-es 2 --text"), "Σ_0()");
    EXPECT_EQ(line("enumerate --chi-es 1"), R"({"genus":0,"cones":[{"order":2,"count":"2"}]})");
    EXPECT_EQ(line("enumerate --chi-es 3 --count"), "0");
    EXPECT_EQ(line("enumerate --chi-es -1/2 --count"), line("enumerate --chi-es -1/2 --text | wc -l | tr -d ' '"));
}

TEST(Cli, Search)
{
    const auto groups = Json::parse(line("search --g-max 0 --k-max 3 --m-max 10 --L 2"));
    ASSERT_EQ(groups.size(), 1U);
    EXPECT_EQ(groups[0].at("members").size(), 2U);
    EXPECT_EQ(Json::parse(line("search --g-max 1 --k-max 2 --m-max 6 --L 3")), Json::array());
}

TEST(Cli, QuotientAndMirrored)
{
    EXPECT_EQ(line("quotient --group C6 --fpc-constant 2 --gamma Z"), "2");
    EXPECT_EQ(line("quotient --group D6 --fpc-constant 2 --gamma Z"), "2");
    EXPECT_EQ(line("mirrored --b0 3,5 --b1 7,11"), "-1867/1155");
    EXPECT_EQ(line("mirrored --b0 3,5 --b1 7,11 --gamma Z^2"), "11");
    EXPECT_EQ(line("mirrored --b0 3,7 --b1 5,11 --gamma Z^2"), "11");
}

TEST(Cli, QuotientFromFiles)
{
    const std::string fpc = R"('[{"subgroup":[0],"chi":2},{"subgroup":[0,1],"chi":2}]')";
    EXPECT_EQ(line("quotient --group C2 --fpc " + fpc + " --gamma Z"), "2");
    EXPECT_EQ(run("quotient --group C2 --fpc '[{\"subgroup\":[0],\"chi\":2}]' --gamma Z").exit_code, 2);
}

TEST(Cli, SameChiLFamily)
{
    const auto j = Json::parse(line("same-chi-l --j 3 --l 2 --count 3"));
    ASSERT_EQ(j.size(), 3U);
    for (const auto& m : j) {
        EXPECT_EQ(m.at("chi_l"), "2");
    }
}

TEST(Cli, WorkedExamples)
{
    for (const char* id : {"sameESCsameg", "sameLESC", "basecase", "noneffective", "nonorientable", "generaldim"}) {
        const auto r = run(std::string("verify-paper ") + id);
        EXPECT_EQ(r.exit_code, 0) << id;
        EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
        EXPECT_NE(r.out.find(std::string(id) + ": ok"), std::string::npos) << r.out;
    }
    EXPECT_NE(run("verify-paper nonorientable").out.find("-1867/1155"), std::string::npos);
    EXPECT_EQ(run("verify-paper nosuchexample").exit_code, 2);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("chi --sig 'Σ_0(1)' --gamma Z").exit_code, 2);
    EXPECT_EQ(run("chi --sig '{bad' --gamma Z").exit_code, 2);
    EXPECT_EQ(run("chi --sig 'Σ_0(3)' --gamma Q8").exit_code, 2);
    EXPECT_EQ(run("chi --sig 'Σ_0(3)' --gamma '<x,y | x^2'").exit_code, 2);
    EXPECT_EQ(run("no-such-command").exit_code, 2);
    EXPECT_EQ(run("mirrored --b0 4 --b1 3 --gamma Z").exit_code, 3);
    EXPECT_EQ(run("quotient --group D22 --fpc-constant 2 --gamma Z^3", "ORBICHAR_HOM_BUDGET=100").exit_code, 3);
    EXPECT_EQ(run("quotient --group D22 --fpc-constant 2 --gamma Z^2", "ORBICHAR_HOM_BUDGET=1000").exit_code, 0);
}
