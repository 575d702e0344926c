#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"rta"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = rta::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = testing::TempDir() + name;
  std::ofstream(path, std::ios::binary) << body;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, PellAndNPell) {
  const auto r = run({"pell", "--d", "2", "--k", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"x\":\"3\",\"y\":\"2\"}\n");
  EXPECT_EQ(run({"pell", "--d", "5", "--k", "1"}).code, 2);
  EXPECT_EQ(run({"npell", "--n", "1"}).out, "{\"A\":\"5\",\"B\":\"7\"}\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"pell", "--d", "2"}).code, 2);
  EXPECT_EQ(run({"pell", "--d", "2", "--k", "1", "--bogus"}).code, 2);
  EXPECT_EQ(run({"factor", "--n", "0"}).code, 2);
  EXPECT_EQ(run({"classify", "--d", "2", "--p", "15"}).code, 2);
  EXPECT_EQ(run({"quartic", "eval", "--d", "67", "--tuple", "1,0,1,0"}).code, 2);
  EXPECT_EQ(run({"quartic", "eval", "--d", "2", "--tuple", "1,0,1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ClassifyAndRepresent) {
  EXPECT_EQ(run({"classify", "--d", "2", "--p", "103"}).out,
            "{\"d\":2,\"p\":\"103\",\"class\":\"Inert\"}\n");
  const auto r = run({"represent", "--d", "2", "--m", "41"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"outcome\":\"Representable\",\"w\":\"3\",\"t\":\"4\"}\n");
  const auto poisoned = run({"represent", "--d", "2", "--m", "1607521"});
  EXPECT_EQ(poisoned.out, "{\"outcome\":\"NotRepresentable\",\"poison\":\"103\",\"exponent\":1}\n");
  EXPECT_EQ(run({"represent", "--d", "2", "--m", "41", "--hint", "1,1"}).code, 1);
  EXPECT_EQ(run({"represent", "--d", "3", "--m", "7", "--pure"}).out,
            "{\"outcome\":\"Representable\",\"w\":\"2\",\"t\":\"1\"}\n");
}

TEST(Cli, BudgetProfileFromEnvironment) {
  ::setenv("RTA_BUDGET_PROFILE", "overnight", 1);
  EXPECT_EQ(run({"represent", "--d", "2", "--m", "41"}).code, 2);
  ::setenv("RTA_BUDGET_PROFILE", "hard", 1);
  EXPECT_EQ(rta::cli::profile_budget(std::getenv("RTA_BUDGET_PROFILE")), rta::Budget::hard());
  EXPECT_EQ(run({"represent", "--d", "2", "--m", "41"}).code, 0);
  ::unsetenv("RTA_BUDGET_PROFILE");
  EXPECT_EQ(rta::cli::profile_budget(nullptr), rta::Budget::defaults());
}

TEST(Cli, QuarticVerifyBundled) {
  const auto r = run({"quartic", "verify", "--d", "2"});
  EXPECT_EQ(r.code, 0);
  const auto j = rta::json::parse(r.out);
  ASSERT_EQ(j.size(), 3u);
  for (const auto& e : j) EXPECT_TRUE(e["is_solution"].get<bool>());
}

TEST(Cli, QuarticConstructInvertEval) {
  EXPECT_EQ(run({"quartic", "construct", "--d", "43", "--ell", "0", "--wit1", "3,0", "--wit2", "3,2"}).out,
            "{\"d\":43,\"r\":\"3\",\"s\":\"0\",\"u\":\"3\",\"v\":\"2\"}\n");
  EXPECT_EQ(run({"quartic", "construct", "--d", "19", "--ell", "0", "--wit1", "1,1", "--wit2", "1,0"}).code, 1);
  const auto inv = run({"quartic", "invert", "--d", "43", "--tuple", "3,0,3,2"});
  EXPECT_EQ(inv.code, 0);
  const auto j = rta::json::parse(inv.out);
  EXPECT_EQ(j["X"], "1");
  EXPECT_EQ(j["Y"], "0");
  EXPECT_EQ(j["index"], 0);
  // The folded base solution has r = 3, so the r = +-1, s = 0 test calls it non-trivial.
  EXPECT_FALSE(j["positive"].get<bool>());
  EXPECT_EQ(run({"quartic", "invert", "--d", "2", "--tuple", "1,1,1,1"}).code, 1);
  const auto ev = rta::json::parse(run({"quartic", "eval", "--d", "7", "--tuple", "1,0,1,0"}).out);
  EXPECT_EQ(ev["value"], "-2");
  EXPECT_TRUE(ev["is_solution"].get<bool>());
}

TEST(Cli, LoadSolutionsFiles) {
  const auto bundled = rta::load_solutions(RTA_DATA_DIR "/known_solutions.json");
  ASSERT_EQ(bundled.size(), 3u);
  const auto embedded = rta::bundled_solutions();
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(bundled[i].d, 2);
    EXPECT_EQ(bundled[i].tuple, embedded[i].tuple);
  }

  EXPECT_TRUE(rta::parse_solutions("[]").empty());

  // Drop the last digit of r in the first tuple: parses, no longer a solution.
  rta::json doc = rta::solutions_to_json(embedded);
  std::string r1 = doc[0]["r"].get<std::string>();
  r1.pop_back();
  doc[0]["r"] = r1;
  const std::string truncated = write_temp("truncated.json", doc.dump(2));
  const auto parsed = rta::load_solutions(truncated);
  ASSERT_EQ(parsed.size(), 3u);
  EXPECT_FALSE(rta::is_solution(rta::quartic_spec(2), parsed[0].tuple));
  EXPECT_EQ(run({"quartic", "verify", "--file", truncated.c_str()}).code, 1);
}

TEST(Cli, MalformedSolutionFilesReportLines) {
  const std::string bad_decimal = write_temp("bad_decimal.json",
                                             "[\n  {\"d\": 2, \"r\": \"1\", \"s\": \"0\",\n"
                                             "   \"u\": \"1x\", \"v\": \"0\"}\n]\n");
  try {
    rta::load_solutions(bad_decimal);
    FAIL() << "expected input_error";
  } catch (const rta::input_error& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  const auto r = run({"quartic", "verify", "--file", bad_decimal.c_str()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("1x"), std::string::npos);

  const std::string bad_json = write_temp("bad_json.json", "[\n {\"d\": 2,\n \"r\": }\n");
  try {
    rta::load_solutions(bad_json);
    FAIL() << "expected input_error";
  } catch (const rta::input_error& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(rta::parse_solutions("[{\"d\": 2, \"r\": 1, \"s\": \"0\", \"u\": \"1\", \"v\": \"0\"}]"),
               rta::input_error);
  EXPECT_THROW(rta::parse_solutions("{}"), rta::input_error);
  EXPECT_EQ(run({"quartic", "verify", "--file", "/nonexistent/x.json"}).code, 2);
}

TEST(Cli, ScanIsByteIdenticalAcrossThreadCounts) {
  const auto a = run({"scan", "--d", "2", "--from", "1", "--to", "16", "--threads", "1"});
  const auto b = run({"scan", "--d", "2", "--from", "1", "--to", "16", "--threads", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = rta::json::parse(a.out);
  ASSERT_EQ(j.size(), 16u);
  EXPECT_EQ(j[3]["overall"]["kind"], "Poisoned");
  EXPECT_EQ(j[3]["overall"]["prime"], "5");
  EXPECT_FALSE(j[3].contains("elapsed_ms"));

  const std::string out_path = testing::TempDir() + "scan.json";
  const auto c = run({"scan", "--d", "19", "--from", "0", "--to", "3", "--json", out_path.c_str()});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("d=19 index=0 BothRepresentable"), std::string::npos);
  EXPECT_EQ(rta::json::parse(read_file(out_path)).size(), 4u);
  EXPECT_EQ(run({"scan", "--d", "2", "--from", "5", "--to", "4"}).code, 2);
  EXPECT_EQ(run({"scan", "--d", "2", "--from", "1", "--to", "4", "--threads", "0"}).code, 2);
}

TEST(Cli, ScanHintsFile) {
  const std::string hints = write_temp("hints.json", rta::solutions_to_json(rta::bundled_solutions()).dump());
  const auto r = run({"scan", "--d", "2", "--from", "128", "--to", "128", "--hints", hints.c_str(),
                      "--trial-bound", "100", "--rho-restarts", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(rta::json::parse(r.out)[0]["overall"]["kind"], "BothRepresentable");
}

TEST(Cli, GrowthChecks) {
  EXPECT_EQ(run({"growth", "--d", "19", "--check", "fact31", "--to", "50"}).code, 0);
  EXPECT_EQ(run({"growth", "--d", "19", "--check", "fact32", "--to", "1000"}).code, 0);
  const auto m = run({"growth", "--d", "19", "--check", "matiyasevich", "--to", "50"});
  EXPECT_EQ(m.code, 0);
  EXPECT_EQ(rta::json::parse(m.out)["min_w_with_ell_above_min"], 12);
  EXPECT_EQ(run({"growth", "--d", "2", "--check", "robinson"}).code, 0);
  EXPECT_EQ(run({"growth", "--d", "2", "--check", "nonsense"}).code, 2);
}

TEST(Cli, DumpFixtures) {
  const auto r = run({"verify-paper", "--dump-fixtures"});
  EXPECT_EQ(r.code, 0);
  const auto j = rta::json::parse(r.out);
  EXPECT_EQ(j["fundamental_solutions"].size(), 8u);
  EXPECT_EQ(rta::parse_solutions(j["solutions"].dump()).size(), 3u);
}
