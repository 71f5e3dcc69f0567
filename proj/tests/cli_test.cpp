#include "permbinom/cli.hpp"

#include <gtest/gtest.h>

#include <json.hpp>
#include <set>
#include <sstream>

namespace permbinom::cli {
namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;

  std::vector<json> records() const {
    std::vector<json> rows;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) rows.push_back(json::parse(line));
    return rows;
  }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(FieldCommand, Orders) {
  const auto a = run({"field", "--p", "2", "--m", "3", "--e", "3"}).records();
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0]["order"], 512);
  EXPECT_EQ(a[0]["subgroup_order"], 73);
  const auto b = run({"field", "--p", "3", "--m", "2", "--e", "3"}).records();
  EXPECT_EQ(b[0]["order"], 729);
  EXPECT_EQ(b[0]["subgroup_order"], 91);
  const auto c = run({"field", "--p", "13", "--m", "1", "--e", "3"}).records();
  EXPECT_EQ(c[0]["order"], 2197);
  EXPECT_EQ(c[0]["subgroup_order"], 183);
  EXPECT_EQ(c[0]["group_factorization"], json::parse("[[2,2],[3,2],[61,1]]"));
}

TEST(TestCommand, Examples) {
  auto pp = run({"test", "--p", "7", "--e", "3", "--r", "1", "--a-exp", "1"});
  EXPECT_EQ(pp.code, kOk);
  EXPECT_EQ(pp.records().at(0)["is_pp"], true);

  auto not_pp = run({"test", "--p", "13", "--e", "3", "--r", "53", "--a-exp", "1"});
  EXPECT_EQ(not_pp.code, kOk);
  EXPECT_EQ(not_pp.records().at(0)["is_pp"], false);

  auto all = run({"test", "--p", "7", "--e", "3", "--r", "1", "--a-exp", "1", "--method", "all"});
  EXPECT_EQ(all.code, kOk);
  std::set<std::string> methods;
  for (const auto& rec : all.records()) {
    EXPECT_EQ(rec["is_pp"], true);
    EXPECT_EQ(rec["a_exp"], 1);
    methods.insert(rec["method"].get<std::string>());
  }
  EXPECT_EQ(methods, (std::set<std::string>{"brute", "hermite", "mu", "closed"}));
}

TEST(TestCommand, CoefficientForm) {
  const auto by_exp = run({"test", "--p", "7", "--r", "2", "--a-exp", "5"}).records().at(0);
  const auto by_coeffs =
      run({"test", "--p", "7", "--r", "2", "--a-coeffs", by_exp["a"].get<std::string>()}).records().at(0);
  EXPECT_EQ(by_coeffs["a_exp"], 5);
  EXPECT_EQ(by_coeffs["is_pp"], by_exp["is_pp"]);
}

TEST(ScanCommand, NoPermutationsOverTwoToTheNine) {
  const auto res = run({"scan", "--p", "2", "--m", "3", "--e", "3", "--r-min", "2", "--r-max", "73"});
  ASSERT_EQ(res.code, kOk);
  std::size_t n = 0;
  for (const auto& rec : res.records()) {
    if (rec["r"].get<std::uint64_t>() % 8 == 1) continue;
    EXPECT_EQ(rec["is_pp"], false) << rec.dump();
    ++n;
  }
  EXPECT_EQ(n, 63u * 10);
}

TEST(ScanCommand, SevenCubedPermutationSet) {
  const auto res = run({"scan", "--p", "7", "--e", "3", "--r-max", "57", "--samples", "5", "--jobs", "4"});
  ASSERT_EQ(res.code, kOk);
  std::set<std::uint64_t> pp;
  for (const auto& rec : res.records()) {
    if (rec["is_pp"].get<bool>()) pp.insert(rec["r"].get<std::uint64_t>());
  }
  EXPECT_EQ(pp, std::set<std::uint64_t>{1});
}

TEST(ScanCommand, EmptyRange) {
  const auto res = run({"scan", "--p", "7", "--e", "3", "--r-min", "9", "--r-max", "8"});
  EXPECT_EQ(res.code, kOk);
  EXPECT_TRUE(res.out.empty());
}

TEST(ScanCommand, OrderedByRThenA) {
  const auto rows = run({"scan", "--p", "5", "--r-min", "3", "--r-max", "6", "--samples", "4", "--jobs", "3"}).records();
  ASSERT_EQ(rows.size(), 16u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto prev = std::pair(rows[i - 1]["r"].get<int>(), rows[i - 1]["a_exp"].get<int>());
    const auto cur = std::pair(rows[i]["r"].get<int>(), rows[i]["a_exp"].get<int>());
    EXPECT_LT(prev, cur);
  }
}

TEST(VerifyCommand, Examples) {
  const auto t1 = run({"verify", "--claim", "theorem1", "--p", "7"});
  EXPECT_EQ(t1.code, kOk);
  const auto rec = t1.records().at(0);
  EXPECT_EQ(rec["claim_id"], "theorem1");
  EXPECT_EQ(rec["disagreements"].size(), 0u);
  EXPECT_EQ(rec["conjecture"], "conjecture-consistent");
  EXPECT_FALSE(rec.contains("wall_time_ms"));

  const auto even = run({"verify", "--claim", "remark-even", "--p", "2", "--m", "2"});
  EXPECT_EQ(even.code, kOk);
  EXPECT_EQ(even.records().at(0)["cases_agreeing"], 63);

  const auto prop = run({"verify", "--claim", "prop1", "--p", "3", "--m", "2"});
  EXPECT_EQ(prop.code, kOk);
  EXPECT_EQ(prop.records().at(0)["disagreements"].size(), 0u);

  const auto timed = run({"verify", "--claim", "lemma4", "--p", "5", "--timing"});
  EXPECT_TRUE(timed.records().at(0).contains("wall_time_ms"));
}

TEST(HwCommand, Examples) {
  const auto a = run({"hw", "--q", "7", "--e", "8", "--r", "10"});
  EXPECT_EQ(a.code, kOk);
  const auto rec = a.records().at(0);
  EXPECT_EQ(rec["predicts_nonpp"], true);
  EXPECT_EQ(rec["bound_lower"], "5326332");
  EXPECT_EQ(rec["d"], 15);

  const auto b = run({"hw", "--q", "7", "--e", "3", "--r", "5"});
  EXPECT_EQ(b.code, kOk);
  EXPECT_EQ(b.records().at(0)["applicable"], false);

  const auto c = run({"hw", "--q", "6", "--e", "3", "--r", "5"});
  EXPECT_EQ(c.code, kInputError);
  EXPECT_TRUE(c.out.empty());
  EXPECT_NE(c.err.find("prime power"), std::string::npos);
}

TEST(HwCommand, Range) {
  const auto rows = run({"hw", "--q", "7", "--e", "8", "--r-min", "2", "--r-max", "6"}).records();
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i]["r"], 2 + i);
}

TEST(ExitCodes, Errors) {
  EXPECT_EQ(run({"test", "--p", "4", "--r", "1", "--a-exp", "1"}).code, kInputError);
  EXPECT_EQ(run({"test", "--p", "7", "--r", "1"}).code, kInputError);
  EXPECT_EQ(run({"test", "--p", "7", "--r", "1", "--a-exp", "1", "--a-coeffs", "1,0,0"}).code, kInputError);
  EXPECT_EQ(run({"test", "--p", "7", "--r", "1", "--a-exp", "1", "--method", "magic"}).code, kInputError);
  EXPECT_EQ(run({"scan", "--p", "7", "--r-min", "0", "--r-max", "3"}).code, kInputError);
  EXPECT_EQ(run({"verify", "--claim", "nope", "--p", "7"}).code, kInputError);
  EXPECT_EQ(run({"verify", "--claim", "prop1", "--p", "2"}).code, kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kInputError);
  EXPECT_EQ(run({"test", "--p", "2", "--m", "9", "--e", "3", "--r", "3", "--a-exp", "1", "--method", "brute"}).code,
            kCapExceeded);
  EXPECT_EQ(run({"verify", "--claim", "r1-linearized", "--p", "2", "--m", "5"}).code, kCapExceeded);
  EXPECT_EQ(run({"--help"}).code, kOk);
}

TEST(Formats, CsvAndHuman) {
  const auto csv = run({"scan", "--p", "3", "--r-min", "2", "--r-max", "3", "--samples", "2", "--format", "csv"});
  ASSERT_EQ(csv.code, kOk);
  std::istringstream in(csv.out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "p,m,e,r,a_exp,a,method,is_pp,conclusive,rule,witness");
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 4u);

  const auto human = run({"hw", "--q", "7", "--e", "8", "--r", "10", "--format", "human"});
  EXPECT_EQ(human.out.rfind("q=7 e=8 r=10 d=15 ", 0), 0u);
  EXPECT_NE(human.out.find("bound_lower=5326332"), std::string::npos);
}

TEST(Determinism, JobsAndRepeats) {
  const std::vector<std::vector<std::string>> commands{
      {"verify", "--claim", "theorem1", "--p", "3", "--m", "2", "--seed", "9"},
      {"verify", "--claim", "prop1", "--p", "13", "--seed", "2"},
      {"scan", "--p", "3", "--m", "2", "--r-max", "91", "--samples", "3", "--seed", "5"},
  };
  for (auto cmd : commands) {
    auto one = cmd, many = cmd;
    one.insert(one.end(), {"--jobs", "1"});
    many.insert(many.end(), {"--jobs", "8"});
    const auto a = run(one), b = run(many), c = run(many);
    EXPECT_EQ(a.code, kOk);
    EXPECT_EQ(a.out, b.out) << cmd[0] << " " << cmd[2];
    EXPECT_EQ(b.out, c.out);
  }
}

}  // namespace
}  // namespace permbinom::cli
