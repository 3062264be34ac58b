#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hopfcheck/cli.hpp"

using namespace hopfcheck;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "hopfcheck");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

LawReport sample_report(std::string law, Status status, Expect expected) {
  LawReport r;
  r.law = std::move(law);
  r.instance = "x";
  r.status = status;
  r.expected = expected;
  r.samples = 3;
  return r;
}

json strip_durations(json j) {
  j.erase("duration_ms");
  for (auto& r : j["reports"]) r.erase("duration_ms");
  return j;
}

}  // namespace

TEST(Emit, EmptyReportListIsValidJson) {
  ReportDocument doc;
  doc.config.subcommand = "laws";
  const auto j = json::parse(emit(doc, Format::json));
  EXPECT_TRUE(j["reports"].is_array());
  EXPECT_TRUE(j["reports"].empty());
  EXPECT_EQ(j["overall"], "pass");
  EXPECT_EQ(j["version"], std::string(kVersion));
}

TEST(Emit, JsonFieldsExactly) {
  ReportDocument doc;
  doc.reports.push_back(sample_report("a", Status::holds_exact, Expect::holds));
  const auto j = nlohmann::ordered_json::parse(emit(doc, Format::json));
  std::vector<std::string> top, fields;
  for (const auto& [k, v] : j.items()) top.push_back(k);
  for (const auto& [k, v] : j["reports"][0].items()) fields.push_back(k);
  EXPECT_EQ(top, (std::vector<std::string>{"version", "config", "reports", "overall", "duration_ms"}));
  EXPECT_EQ(fields, (std::vector<std::string>{"law", "instance", "status", "samples", "tolerance",
                                              "max_residual", "seed", "duration_ms", "expected"}));
  EXPECT_TRUE(j["reports"][0]["tolerance"].is_null());
}

TEST(Emit, WitnessRoundTrip) {
  ReportDocument doc;
  auto r = sample_report("associativity", Status::fails, Expect::fails);
  r.witness = make_witness<Rational>({{Rational(1, 2), Rational(-3)}}, {Rational(7, 9)}, {Rational(0)});
  doc.reports.push_back(r);
  const auto j = json::parse(emit(doc, Format::json));
  const auto& w = j["reports"][0]["witness"];
  EXPECT_EQ(w["inputs"], json::parse(R"([["1/2","-3"]])"));
  EXPECT_EQ(Rational::parse(w["lhs"][0].get<std::string>()), Rational(7, 9));
  EXPECT_EQ(w["rhs"][0], "0");
  EXPECT_EQ(j["overall"], "pass");
}

TEST(Emit, CsvOneRowPerReport) {
  ReportDocument doc;
  for (const char* law : {"a", "b", "c"}) doc.reports.push_back(sample_report(law, Status::holds_exact, Expect::holds));
  doc.reports[1].witness = Witness{{{"1", "2"}}, {"3"}, {"4"}};
  const std::string csv = emit(doc, Format::csv);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "law,instance,status,expected,samples,tolerance,max_residual,seed,duration_ms,witness");
}

TEST(Emit, UnexpectedFailureFailsOverall) {
  ReportDocument doc;
  doc.reports.push_back(sample_report("a", Status::fails, Expect::fails));
  EXPECT_TRUE(doc.ok());
  doc.reports.push_back(sample_report("b", Status::holds_sampled, Expect::fails));
  EXPECT_FALSE(doc.ok());
  EXPECT_EQ(json::parse(emit(doc, Format::json))["overall"], "fail");
}

TEST(Run, LadderLevelThree) {
  const auto r = call({"laws", "--level", "3", "--mode", "exact", "--samples", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  bool saw_assoc = false, saw_alt = false;
  for (const auto& rep : j["reports"]) {
    if (rep["law"] == "associativity") {
      saw_assoc = true;
      EXPECT_EQ(rep["status"], "fails");
      EXPECT_EQ(rep["expected"], "fails");
      EXPECT_TRUE(rep.contains("witness"));
    }
    if (rep["law"] == "alternativity") {
      saw_alt = true;
      EXPECT_EQ(rep["status"], "holds-exact");
    }
  }
  EXPECT_TRUE(saw_assoc && saw_alt);
}

TEST(Run, ReportsSortedByInstanceThenLaw) {
  const auto j = json::parse(call({"fiber", "--samples", "20"}).out);
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& r : j["reports"]) keys.emplace_back(r["instance"], r["law"]);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(keys.size(), 12u);
}

TEST(Run, UsageErrorsExitTwo) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  const auto bad_flag = call({"laws", "--bogus"});
  EXPECT_EQ(bad_flag.code, 2);
  EXPECT_NE(bad_flag.err.find("Usage"), std::string::npos);
  EXPECT_EQ(call({"laws", "--mode", "fuzzy"}).code, 2);
  EXPECT_EQ(call({"laws", "--samples", "0"}).code, 2);
  EXPECT_EQ(call({"spheroid", "--instance", "nope", "--samples", "5"}).code, 2);
  EXPECT_EQ(call({"hspace", "--instance", "s15", "--samples", "5"}).code, 2);
  EXPECT_EQ(call({"laws", "--level", "9"}).code, 2);
}

TEST(Run, HelpExitsZero) {
  const auto r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fibration"), std::string::npos);
  EXPECT_EQ(call({"diamond", "--help"}).code, 0);
}

TEST(Run, UnwritableOutputExitsTwo) {
  const auto r = call({"zerodiv", "--level", "2", "--output", "/nonexistent-dir/x/report.json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("cannot write"), std::string::npos);
}

TEST(Run, WritesFileInEachFormat) {
  const auto dir = std::filesystem::temp_directory_path() / "hopfcheck_cli_test";
  std::filesystem::create_directories(dir);
  for (const char* fmt : {"json", "csv", "text"}) {
    const auto path = (dir / (std::string("zd.") + fmt)).string();
    const auto r = call({"zerodiv", "--format", fmt, "--output", path});
    EXPECT_EQ(r.code, 0) << r.err;
    std::ifstream f(path);
    const std::string body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    EXPECT_NE(body.find("sedenion"), std::string::npos) << fmt;
  }
}

TEST(Run, SeedEnvOverridesFlag) {
  ::setenv("HOPFCHECK_SEED", "77", 1);
  const auto j = json::parse(call({"fiber", "--instance", "complex", "--samples", "5", "--seed", "3"}).out);
  EXPECT_EQ(j["config"]["seed"], 77);
  EXPECT_EQ(j["reports"][0]["seed"], 77);
  ::setenv("HOPFCHECK_SEED", "abc", 1);
  EXPECT_EQ(call({"fiber", "--samples", "5"}).code, 2);
  ::unsetenv("HOPFCHECK_SEED");
}

TEST(Run, ToleranceEchoOnlyInFloatMode) {
  auto j = json::parse(call({"fiber", "--instance", "complex", "--samples", "5"}).out);
  EXPECT_TRUE(j["config"]["tolerance"].is_null());
  j = json::parse(call({"fiber", "--instance", "complex", "--samples", "5", "--mode", "float",
                        "--tolerance", "1e-8"}).out);
  EXPECT_EQ(j["config"]["tolerance"], 1e-8);
  EXPECT_EQ(j["reports"][0]["tolerance"], 1e-8);
}

TEST(Run, WorkerCountDoesNotChangeReport) {
  for (const char* mode : {"exact", "float"}) {
    const auto a = call({"hspace", "--instance", "s7", "--samples", "300", "--seed", "9", "--mode", mode,
                         "--workers", "1"});
    const auto b = call({"hspace", "--instance", "s7", "--samples", "300", "--seed", "9", "--mode", mode,
                         "--workers", "4"});
    EXPECT_EQ(strip_durations(json::parse(a.out)), strip_durations(json::parse(b.out))) << mode;
  }
}

TEST(Run, DiamondGridFlag) {
  const auto r = call({"diamond", "--grid", "4", "--samples", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["config"]["grid"], 4);
  EXPECT_EQ(j["reports"].size(), 4u);
  EXPECT_EQ(call({"diamond", "--grid", "0"}).code, 2);
}
