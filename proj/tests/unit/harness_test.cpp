#include "ffgeom/harness.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ffgeom;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST(ParseConfig, AcceptsMinimalIndexConfig) {
  const auto c = parse_config(R"({"command":"index","s":"1/2","t":"1","n":2,"k":1})");
  EXPECT_EQ(c.command, "index");
  EXPECT_EQ(c.rationals.at("s").front(), Rational(1, 2));
  EXPECT_EQ(c.rationals.at("t").front(), Rational(1));
  EXPECT_EQ(c.integers.at("n").front(), 2);
}

TEST(ParseConfig, RejectsDecimals) {
  EXPECT_NE(error_of(R"({"command":"index","s":"0.5","t":"1","n":2,"k":1})").find("rationals must be num/den"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"command":"index","s":0.5,"t":"1","n":2,"k":1})").find("rationals must be num/den"),
            std::string::npos);
}

TEST(ParseConfig, RejectsCompositePrime) {
  const auto why = error_of(R"({"command":"construct","s":"1","t":"2","p":[5,9]})");
  EXPECT_NE(why.find("9 is not prime"), std::string::npos);
  EXPECT_NE(why.find("\"p\""), std::string::npos);
}

TEST(ParseConfig, NamesUnknownKeysAndBadJson) {
  EXPECT_NE(error_of(R"({"command":"index","bogus":1})").find("\"bogus\""), std::string::npos);
  EXPECT_NE(error_of(R"({"command":"count","s":"1"})").find("\"s\""), std::string::npos);
  EXPECT_NE(error_of(R"({"command":"index",)").find("JSON"), std::string::npos);
  EXPECT_NE(error_of(R"({"command":"nope"})").find("\"command\""), std::string::npos);
  EXPECT_NE(error_of(R"({"command":"lemmas","negative_control":1})").find("negative_control"), std::string::npos);
}

TEST(Run, IndexRowCarriesExactValue) {
  const auto report = run(parse_config(R"({"command":"index","s":"1/2","t":"1","n":2,"k":1,"expected":"5/4"})"));
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_TRUE(report.rows[0].pass);
  EXPECT_EQ(report.rows[0].cells.at(5), "5/4");
  EXPECT_EQ(report.rows[0].cells.at(6), "case_c");
}

TEST(Run, MarstrandMinusInfinity) {
  const auto report =
      run(parse_config(R"({"command":"index","function":"M","a":"3","s":"1","n":3,"k":1,"expected":"-inf"})"));
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_TRUE(report.rows[0].pass);
  EXPECT_EQ(report.rows[0].cells.at(5), "-inf");
}

TEST(Run, CartesianProductInFixedOrder) {
  const auto report = run(parse_config(R"({"command":"index","s":["1/2","1"],"t":["0","1","2"],"n":2,"k":1})"));
  ASSERT_EQ(report.rows.size(), 6u);
  EXPECT_EQ(report.rows[0].cells[1], "1/2");
  EXPECT_EQ(report.rows[0].cells[2], "0/1");
  EXPECT_EQ(report.rows[1].cells[2], "1/1");
  EXPECT_EQ(report.rows[3].cells[1], "1/1");
}

TEST(Run, PerCaseErrorsBecomeFailRows) {
  const auto report = run(parse_config(R"({"command":"index","s":["1/2","3"],"t":"1","n":2,"k":1})"));
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_TRUE(report.rows[0].pass);
  EXPECT_FALSE(report.rows[1].pass);
  EXPECT_FALSE(report.rows[1].cells.back().empty());
  EXPECT_EQ(report.rows[1].cells.size(), report.header.size());
  EXPECT_EQ(report.fails(), 1u);
}

TEST(Run, DegenerateScaleIsReportedPerCase) {
  const auto report =
      run(parse_config(R"({"command":"exceptional","construction":"oberlin","a":"1","s":"3/4","p":[5,101]})"));
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_FALSE(report.rows[0].pass);
  EXPECT_TRUE(report.rows[1].pass);
}

TEST(Run, RecursionMLemmaHasNoCounterexamples) {
  const auto report = run(parse_config(R"({"command":"lemmas","lemma":"recursion_m","dims":[[4,2]],"step":"1/4"})"));
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_TRUE(report.rows[0].pass);
  EXPECT_EQ(report.rows[0].cells.at(5), "0");
  EXPECT_TRUE(report.counterexamples.empty());
}

TEST(Run, ConstructThreePrimes) {
  const auto report = run(parse_config(R"({"command":"construct","s":"1/2","t":"1","n":2,"k":1,"p":[29,61,101]})"));
  ASSERT_EQ(report.rows.size(), 3u);
  for (const auto& row : report.rows) EXPECT_TRUE(row.pass);
}

TEST(Run, CountSkipsInvalidTuples) {
  const auto report = run(parse_config(R"({"command":"count","n":3,"k":[1,2],"m":[1,2],"l":[0,1],"p":[2,3]})"));
  for (const auto& row : report.rows) EXPECT_TRUE(row.pass) << row.cells.back();
  EXPECT_FALSE(report.rows.empty());
}

TEST(Output, FilesAreByteIdenticalAcrossRunsAndJobs) {
  const auto dir = std::filesystem::temp_directory_path() / "ffgeom_harness_test";
  std::filesystem::remove_all(dir);
  auto config = parse_config(R"({"command":"lemmas","lemma":["recursion_m","index_properties"],
                                 "dims":[[4,2]],"step":"1/4","negative_control":true})");
  config.jobs = 1;
  write_report(run(config), (dir / "a").string());
  config.jobs = 3;
  write_report(run(config), (dir / "b").string());
  EXPECT_EQ(slurp(dir / "a" / "lemmas.csv"), slurp(dir / "b" / "lemmas.csv"));
  EXPECT_EQ(slurp(dir / "a" / "counterexamples.csv"), slurp(dir / "b" / "counterexamples.csv"));
  EXPECT_NE(slurp(dir / "a" / "summary.json").find("\"wall_ms\""), std::string::npos);
  std::filesystem::remove_all(dir);
}
