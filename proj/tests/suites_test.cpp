#include "cuspk/suites.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cuspk;
using namespace cuspk::suites;

namespace {

SuiteConfig single_pair(Int a, Int b) {
  SuiteConfig cfg;
  cfg.pairs = {Params(a, b)};
  return cfg;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CUSPK_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Suites, Prop51SingleFamily) {
  SuiteConfig cfg = single_pair(2, 3);
  cfg.m_max = 12;
  const auto rows = run_suite("prop51", cfg);
  EXPECT_EQ(exit_code(rows), 0);
  int connes = 0;
  for (const auto& r : rows) {
    EXPECT_EQ(r.result, kPass) << to_json(r).dump();
    if (r.statement.rfind("connes_factor", 0) == 0) ++connes;
  }
  // generic weights up to 12: 1, 5, 7, 11, each on two models
  EXPECT_EQ(connes, 8);
}

TEST(Suites, KGroupLengths) {
  SuiteConfig cfg = single_pair(2, 3);
  cfg.primes = {5};
  cfg.r_max = 3;
  std::vector<Int> lengths;
  for (const auto& r : run_suite("kgroups", cfg))
    if (r.statement == "length") lengths.push_back(r.details.at("length").get<Int>());
  EXPECT_EQ(lengths, (std::vector<Int>{1, 3, 5, 7}));
}

TEST(Suites, ConjCHoldsOnCoveredRows) {
  SuiteConfig cfg = single_pair(2, 3);
  cfg.m_max = 10;
  const auto rows = run_suite("conjC", cfg);
  EXPECT_EQ(exit_code(rows), 0);
  for (const auto& r : rows) {
    if (r.details.at("ell").get<Int>() <= 1) {
      EXPECT_EQ(r.result, "HOLDS") << to_json(r).dump();
    }
  }
}

TEST(Suites, SchedulingDoesNotChangeOutput) {
  SuiteConfig cfg = single_pair(2, 5);
  cfg.m_max = 10;
  auto dump = [](const std::vector<Row>& rows) {
    std::string s;
    for (const auto& r : rows) s += to_json(r).dump() + "\n" + csv_line(r) + "\n";
    return s;
  };
  cfg.jobs = 1;
  const std::string one = dump(run_suite("conjB", cfg)) + dump(run_suite("conjC", cfg));
  cfg.jobs = 3;
  const std::string three = dump(run_suite("conjB", cfg)) + dump(run_suite("conjC", cfg));
  EXPECT_EQ(one, three);
}

TEST(Suites, RowRoundTripAndCsv) {
  Row r{"conjC", 2, 3, 5, std::nullopt, std::nullopt, "x", "HOLDS", {{"witness", "say \"hi\""}}};
  EXPECT_EQ(from_json(nlohmann::json::parse(to_json(r).dump())), r);
  EXPECT_EQ(csv_line(r), "conjC,2,3,5,,,\"x\",HOLDS,\"{\"\"witness\"\":\"\"say \\\"\"hi\\\"\"\"\"}\"");
}

TEST(Suites, ExitCodes) {
  Row pass{"s", 2, 3, 1, {}, {}, "t", kPass, nlohmann::json::object()};
  Row fail = pass;
  fail.result = kFail;
  Row und = pass;
  und.result = "UNDECIDED";
  und.details = {{"theorem", false}};
  Row und_covered = und;
  und_covered.details = {{"theorem", true}};
  Row mismatch = pass;
  mismatch.result = kMismatch;
  EXPECT_EQ(exit_code({pass, mismatch}), 0);
  EXPECT_EQ(exit_code({pass, und}), 2);
  EXPECT_EQ(exit_code({und, fail}), 1);
  EXPECT_EQ(exit_code({und_covered}), 1);
}

TEST(Suites, MergeDedupesAndFlagsConflicts) {
  Row x{"s", 2, 3, 1, {}, {}, "t", kPass, nlohmann::json::object()};
  Row y{"s", 2, 3, 2, {}, {}, "t", kPass, nlohmann::json::object()};
  auto disjoint = merge_rows({y, x});
  ASSERT_EQ(disjoint.rows.size(), 2u);
  EXPECT_EQ(disjoint.rows[0], x);
  EXPECT_TRUE(disjoint.conflicts.empty());
  EXPECT_EQ(merge_rows({x, y, x}).rows.size(), 2u);
  Row x2 = x;
  x2.result = kFail;
  auto conflicting = merge_rows({x, x2});
  EXPECT_EQ(conflicting.conflicts.size(), 1u);
}

TEST(Suites, UnknownSuiteRejected) { EXPECT_THROW(run_suite("nope", SuiteConfig{}), PreconditionViolation); }

TEST(Cli, ExitCodesAndReports) {
  const auto dir = std::filesystem::temp_directory_path() / "cuspk_cli_test";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a").string(), b = (dir / "b").string(), m = (dir / "m").string();
  EXPECT_EQ(run_cli("verify prop51 --a 2 --b 3 --m-max 6 --out " + a), 0);
  EXPECT_EQ(run_cli("verify kgroups --a 2 --b 3 --p 5 --r-max 1 --jobs 2 --out " + b), 0);
  EXPECT_EQ(run_cli("verify nope"), 3);
  EXPECT_EQ(run_cli("verify prop51 --a 2 --b 4"), 3);
  EXPECT_EQ(run_cli("verify prop51 --a 2"), 3);
  EXPECT_EQ(run_cli("verify kgroups --p 4"), 3);
  EXPECT_EQ(run_cli(""), 3);
  EXPECT_EQ(run_cli("verify prop51 --a 2 --b 3 --m-max 6 --out " + a + "_again"), 0);
  EXPECT_EQ(slurp(a + ".jsonl"), slurp(a + "_again.jsonl"));
  EXPECT_EQ(slurp(a + ".csv"), slurp(a + "_again.csv"));

  EXPECT_EQ(run_cli("report " + a + ".jsonl " + b + ".jsonl " + a + ".jsonl --out " + m), 0);
  auto lines = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n'); };
  EXPECT_EQ(lines(slurp(m + ".jsonl")), lines(slurp(a + ".jsonl")) + lines(slurp(b + ".jsonl")));

  std::string text = slurp(a + ".jsonl");
  text.replace(text.find("\"PASS\""), 6, "\"FAIL\"");
  std::ofstream(dir / "conflict.jsonl") << text;
  EXPECT_EQ(run_cli("report " + a + ".jsonl " + (dir / "conflict.jsonl").string()), 1);
  std::ofstream(dir / "broken.jsonl") << "{\"suite\":\n";
  EXPECT_EQ(run_cli("report " + (dir / "broken.jsonl").string()), 3);
  std::filesystem::remove_all(dir);
}
