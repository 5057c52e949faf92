#include "ribsyz/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ribsyz;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path data(const std::string& name)
{
    return std::filesystem::path(RIBSYZ_TEST_DATA) / name;
}

std::filesystem::path scratch(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("ribsyz_test_" + name);
}

} // namespace

TEST(Cli, DimsCsv)
{
    const Result r = run({"dims", "--genus", "7", "--power", "3", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "d,dim");
    int rows = 0, total = 0;
    while (std::getline(in, line)) {
        ++rows;
        total += std::stoi(line.substr(line.find(',') + 1));
    }
    EXPECT_EQ(rows, 19);
    EXPECT_EQ(total, 5 * (7 - 1));
}

TEST(Cli, VerifyExitCodes)
{
    const Result star = run({"verify", "--genus", "7", "--family", "star"});
    EXPECT_EQ(star.code, 0);
    EXPECT_TRUE(Json::parse(star.out).at("verdict").get<bool>());

    const Result minus = run({"verify", "--genus", "7", "--family", "minus"});
    EXPECT_EQ(minus.code, 1);
    const Json j = Json::parse(minus.out);
    EXPECT_FALSE(j.at("verdict").get<bool>());
    EXPECT_EQ(j.at("duplicates").size(), 2u);
}

TEST(Cli, InvalidInput)
{
    EXPECT_EQ(run({"reproduce", "--from", "6"}).code, 2);
    EXPECT_EQ(run({"dims", "--genus", "6"}).code, 2);
    EXPECT_EQ(run({"dims", "--genus", "3"}).code, 2);
    EXPECT_EQ(run({"koszul", "--p", "4"}).code, 2);
    EXPECT_EQ(run({"verify", "--family", "bogus"}).code, 2);
    EXPECT_EQ(run({"verify"}).code, 2);
    EXPECT_EQ(run({"dims", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"verify", "--file", "/nonexistent/family.json"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    const Result r = run({"state", "--genus", "8", "--family", "plus"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("genus"), std::string::npos);
}

TEST(Cli, StateText)
{
    const Result r = run({"state", "--genus", "7", "--family", "plus"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("(48, 36, 36, 48, 36, 36, 48)"), std::string::npos);
}

TEST(Cli, SemistableWritesCertificate)
{
    const auto path = scratch("cert_g9_p2.json");
    std::filesystem::remove(path);
    const Result r = run({"semistable", "--genus", "9", "--p", "2", "--certificate", path.string()});
    EXPECT_EQ(r.code, 0);
    ASSERT_TRUE(std::filesystem::exists(path));
    const Json j = Json::parse(slurp(path));
    EXPECT_EQ(j.at("outcome"), "semistable");
    EXPECT_EQ(j.at("genus"), 9);
    std::filesystem::remove(path);
}

TEST(Cli, FamilyFileRoundTrip)
{
    const auto path = scratch("family_g7_star.json");
    const Result dump = run({"family", "--genus", "7", "--family", "star", "--out", path.string()});
    ASSERT_EQ(dump.code, 0);
    const Result back = run({"verify", "--file", path.string()});
    EXPECT_EQ(back.code, 0);
    EXPECT_EQ(Json::parse(back.out), Json::parse(run({"verify", "--genus", "7", "--family", "star"}).out));
    std::filesystem::remove(path);
}

TEST(Cli, GoldenReports)
{
    EXPECT_EQ(run({"verify", "--genus", "7", "--family", "plus"}).out, slurp(data("verify_g7_plus.json")));
    EXPECT_EQ(run({"barycenter-lemma", "--genus", "7"}).out, slurp(data("barycenter_g7.json")));
    EXPECT_EQ(run({"family", "--genus", "5", "--family", "plus"}).out, slurp(data("family_g5_plus.json")));
    EXPECT_EQ(run({"verify", "--file", data("family_g5_plus.json").string()}).code, 0);
}

TEST(Cli, Reproduce)
{
    const Result r = run({"reproduce", "--from", "11", "--to", "11"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("claims passed"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_EQ(run({"reproduce", "--from", "7", "--to", "7"}).code, 1);
}
