// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.h"
#include "redvote/cli/cli.h"
#include "redvote/dsl/dsl.h"
#include "redvote/report/report.h"

#ifndef REDVOTE_MODELS_DIR
#define REDVOTE_MODELS_DIR "models"
#endif

namespace redvote {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome RunCli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, {out, err, false});
  return {code, out.str(), err.str()};
}

std::string Models(const char* file) { return std::string(REDVOTE_MODELS_DIR) + "/" + file; }

// Writes `text` to a fresh file under the temp directory.
std::string TempFile(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("redvote_test_" + name);
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

bool Contains(const std::string& s, std::string_view part) {
  return s.find(part) != std::string::npos;
}

double CsvValue(const std::string& csv, const std::string& key) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key, 0) == 0) return std::stod(line.substr(key.size()));
  }
  FAIL("missing CSV key " << key);
  return 0.0;
}

TEST_CASE("report helpers") {
  CHECK(report::InputDigest("abc") ==
        "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(report::FormatValue(2.19079e-6) == "2.1908e-06");
  CHECK(report::FormatValue(4.8056e-13) == "4.8056e-13");
  CHECK(report::SilBand(3.3227e-7) == "SIL 2");
  CHECK(report::SilBand(5e-9) == "SIL 4");
  CHECK(report::SilBand(1e-9) == "SIL 4");
  CHECK(report::SilBand(9.0e-10) == "beyond SIL 4");
  CHECK(report::SilBand(1e-3) == "below SIL 1");
  CHECK(report::CsvField("plain") == "plain");
  CHECK(report::CsvField("a,b") == "\"a,b\"");
  CHECK(report::CsvField("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(report::CsvField("two\nlines") == "\"two\nlines\"");
  std::vector<std::pair<std::string, double>> ex = {{"H", 2e-9}};
  CHECK(!report::MakeVerdict(ex, "H", 1e-9).pass);
  CHECK(report::MakeVerdict(ex, "H", 2e-9).pass);
  CHECK_THROWS_AS(report::MakeVerdict(ex, "G", 1e-9), ValidationError);
}

TEST_CASE("JSON report round-trips") {
  report::AnalysisReport r;
  r.workflow = "w \"quoted\"";
  r.instances = {{"phi", {{"PAR_4", 2.190790000000001e-6}, {"PAR_5", 4.803942403140088e-13}}}};
  r.exports = {{"HFR_2OO3", 3.3227269156628564e-07}, {"Z", 0.0}};
  r.posteriors = report::PosteriorTable{
      "phi", {{"UNSAFE_OUTPUT", "True"}}, {{"Fault_A", {{"True", 0.999}, {"False", 0.001}}}}};
  r.verdict = report::Verdict{"HFR_2OO3", 3.3227269156628564e-07, 1e-9, false};
  r.sil_band = "SIL 2";
  r.tool_version = "0.1.0";
  r.input_digest = report::InputDigest("x");
  r.generated_at = "2026-10-17T00:00:00Z";
  CHECK(report::ParseJsonReport(report::RenderJson(r)) == r);
  report::AnalysisReport bare;
  bare.workflow = "w";
  CHECK(report::ParseJsonReport(report::RenderJson(bare)) == bare);
  CHECK_THROWS_AS(report::ParseJsonReport("{\"schema\": 1}"), Error);
  CHECK_THROWS_AS(report::ParseJsonReport("not json"), Error);
}

TEST_CASE("solve: first case study fails the 1e-9 threshold") {
  auto o = RunCli({"solve", Models("case-study.rvm"), "--threshold", "1e-9"});
  CHECK(o.code == cli::kVerdictFail);
  CHECK(Contains(o.out, "HFR_2OO3      3.3227e-07"));
  CHECK(Contains(o.out, "FAIL"));
  CHECK(!Contains(o.out, "\x1b["));
}

TEST_CASE("solve: second case study passes") {
  auto o = RunCli({"solve", Models("case-study-2.rvm"), "--threshold", "1e-9", "--format", "csv"});
  CHECK(o.code == cli::kOk);
  const double hfr = CsvValue(o.out, "export,,HFR_2OO3,");
  CHECK(testing::RelErr(hfr, 9.1e-10) <= 0.02);
  CHECK(Contains(o.out, "verdict,HFR_2OO3,pass,true"));
}

TEST_CASE("solve without a threshold has no verdict") {
  auto o = RunCli({"solve", Models("case-study.rvm"), "--format", "json"});
  CHECK(o.code == cli::kOk);
  auto r = report::ParseJsonReport(o.out);
  CHECK(!r.verdict);
  CHECK(r.workflow == "case-study");
  CHECK(r.exports.front().first == "HFR_2OO3");
  CHECK(r.input_digest == report::InputDigest(dsl::ReadSourceFile(Models("case-study.rvm")).text));
}

TEST_CASE("identical inputs give identical reports apart from the timestamp") {
  auto a = report::ParseJsonReport(RunCli({"solve", Models("case-study.rvm"), "--format", "json"}).out);
  auto b = report::ParseJsonReport(RunCli({"solve", Models("case-study.rvm"), "--format", "json"}).out);
  a.generated_at.clear();
  b.generated_at.clear();
  CHECK(a == b);
}

TEST_CASE("solve --metric and --out") {
  const std::string out = (std::filesystem::temp_directory_path() / "redvote_test_out.json").string();
  auto o = RunCli({"solve", Models("case-study.rvm"), "--threshold", "1e20", "--metric",
                   "MTBHE_2OO3", "--format", "json", "--out", out});
  CHECK(o.code == cli::kOk);
  CHECK(o.out.empty());
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  auto r = report::ParseJsonReport(buf.str());
  REQUIRE(r.verdict);
  CHECK(r.verdict->metric == "MTBHE_2OO3");
  CHECK(r.verdict->pass);
  CHECK(RunCli({"solve", Models("case-study.rvm"), "--threshold", "1", "--metric", "nope"}).code ==
        cli::kValidationError);
  CHECK(RunCli({"solve", Models("case-study.rvm"), "--out", "/nonexistent/dir/x"}).code ==
        cli::kParseError);
}

TEST_CASE("solve error exit codes") {
  auto missing = RunCli({"solve", "missing.rvm"});
  CHECK(missing.code == cli::kParseError);
  CHECK(Contains(missing.err, "missing.rvm:1:1: error:"));

  auto syntax = RunCli({"solve", TempFile("syntax.rvm", "workflow \"w\" {\n  output = 1;\n}\n")});
  CHECK(syntax.code == cli::kParseError);
  CHECK(Contains(syntax.err, ":2:10: error:"));

  auto invalid = RunCli({"solve", TempFile("unbound.rvm",
                                           "workflow \"w\" { instance phi : builtin.failure2oo2 "
                                           "{ PAR_1 = 0.1; } }")});
  CHECK(invalid.code == cli::kValidationError);
  CHECK(Contains(invalid.err, "unbound input"));

  auto numeric = RunCli({"solve", TempFile("numeric.rvm",
                                           "workflow \"w\" { instance phi : builtin.failure2oo2 "
                                           "{ PAR_1 = 0; PAR_2 = 0.1; PAR_3 = 0.1; } "
                                           "output m = 1 / phi.PAR_5; }")});
  CHECK(numeric.code == cli::kNumericError);

  auto no_export = RunCli({"solve", TempFile("empty.rvm", "workflow \"w\" {}"), "--threshold", "1"});
  CHECK(no_export.code == cli::kValidationError);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(RunCli({}).code == cli::kParseError);
  CHECK(RunCli({"frobnicate"}).code == cli::kParseError);
  CHECK(RunCli({"solve"}).code == cli::kParseError);
  CHECK(RunCli({"solve", Models("case-study.rvm"), "--format", "xml"}).code == cli::kParseError);
  CHECK(RunCli({"solve", Models("case-study.rvm"), "--threshold", "abc"}).code == cli::kParseError);
  CHECK(RunCli({"--help"}).code == cli::kOk);
  CHECK(RunCli({"--version"}).code == cli::kOk);
}

TEST_CASE("posteriors") {
  auto o = RunCli({"posteriors", Models("case-study.rvm"), "phi", "--evidence",
                   "UNSAFE_OUTPUT=True", "--format", "csv"});
  REQUIRE(o.code == cli::kOk);
  CHECK(std::fabs(CsvValue(o.out, "posterior,Error_due_to_Transient_A,True,") - 0.684) <= 0.003);
  CHECK(std::fabs(CsvValue(o.out, "posterior,Non_detectable_Fault_A,True,") - 0.076) <= 0.003);
  CHECK(Contains(o.out, "evidence,UNSAFE_OUTPUT,True,1"));

  auto json = RunCli({"posteriors", Models("case-study.rvm"), "phi", "--evidence",
                      "UNSAFE_OUTPUT=True", "--format", "json"});
  auto r = report::ParseJsonReport(json.out);
  REQUIRE(r.posteriors);
  CHECK(r.posteriors->rows.size() == 24);
  for (std::size_t i = 1; i < r.posteriors->rows.size(); ++i) {
    CHECK(r.posteriors->rows[i - 1].variable < r.posteriors->rows[i].variable);
  }

  auto root = RunCli({"posteriors", Models("case-study.rvm"), "phi", "--evidence", "Fault_A=True",
                      "--format", "csv"});
  CHECK(CsvValue(root.out, "posterior,Fault_A,True,") == 1.0);

  auto text = RunCli({"posteriors", Models("case-study.rvm"), "phi"});
  CHECK(text.code == cli::kOk);
  CHECK(Contains(text.out, "UNSAFE_OUTPUT"));
}

TEST_CASE("posteriors error exit codes") {
  const std::string f = Models("case-study.rvm");
  CHECK(RunCli({"posteriors", f, "nobody"}).code == cli::kValidationError);
  CHECK(RunCli({"posteriors", f, "mu"}).code == cli::kValidationError);
  CHECK(RunCli({"posteriors", f, "phi", "--evidence", "Nope=True"}).code == cli::kValidationError);
  CHECK(RunCli({"posteriors", f, "phi", "--evidence", "Fault_A=Maybe"}).code ==
        cli::kValidationError);
  CHECK(RunCli({"posteriors", f, "phi", "--evidence", "Fault_A"}).code == cli::kParseError);
  // No fault and a faulty unit output at once.
  auto zero = RunCli({"posteriors", f, "phi", "--evidence", "Fault_A=False", "--evidence",
                      "UNCORR_A=True"});
  CHECK(zero.code == cli::kNumericError);
  CHECK(Contains(zero.err, "zero probability"));
}

TEST_CASE("sweep") {
  const std::string f = Models("case-study.rvm");
  auto o = RunCli({"sweep", f, "--param", "phi.PAR_1", "--factors", "1,0.1", "--format", "csv"});
  REQUIRE(o.code == cli::kOk);
  std::istringstream in(o.out);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK(header == "factor,HFR_2OO3,MTBHE_2OO3,MTBHE_2OO2,PAR_4,PAR_5\r");
  auto field = [](const std::string& row, int k) {
    std::istringstream s(row);
    std::string cell;
    for (int i = 0; i <= k; ++i) std::getline(s, cell, ',');
    return std::stod(cell);
  };
  CHECK(field(row1, 0) == 1.0);
  CHECK(field(row2, 0) == 0.1);
  CHECK(std::fabs(field(row1, 5) / field(row2, 5) / 100.0 - 1.0) <= 0.10);

  auto single = RunCli({"sweep", f, "--param", "phi.PAR_1", "--factors", "1", "--format", "csv"});
  auto solved = RunCli({"solve", f, "--format", "csv"});
  std::istringstream s(single.out);
  std::getline(s, header);
  std::getline(s, row1);
  CHECK(field(row1, 1) == CsvValue(solved.out, "export,,HFR_2OO3,"));

  auto bound = RunCli({"sweep", f, "--param", "mu.PAR_4", "--factors", "1"});
  CHECK(bound.code == cli::kValidationError);
  CHECK(Contains(bound.err, "reference-bound"));
  CHECK(RunCli({"sweep", f, "--param", "phi.PAR_1", "--factors", "1,-2"}).code == cli::kParseError);
  CHECK(RunCli({"sweep", f, "--param", "phi.PAR_1"}).code == cli::kParseError);
  CHECK(RunCli({"sweep", f, "--param", "phi.PAR_1", "--factors", "1,2", "--format", "json"}).code ==
        cli::kOk);
}

TEST_CASE("validate") {
  auto ok = RunCli({"validate", Models("case-study.rvm")});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.empty());
  CHECK(ok.err.empty());

  auto cycle = RunCli({"validate", TempFile("cycle.rvm",
                                            "workflow \"w\" {\n"
                                            "  instance a : builtin.maintenance5 {\n"
                                            "    PAR_4 = b.PAR_10; PAR_5 = 1e-12 * b.PAR_10;\n"
                                            "    PAR_6 = 1; PAR_7 = 0.01; PAR_8 = 1e-4; PAR_9 = 3;\n"
                                            "  }\n"
                                            "  instance b : builtin.maintenance5 {\n"
                                            "    PAR_4 = a.PAR_10; PAR_5 = 1e-12 * a.PAR_10;\n"
                                            "    PAR_6 = 1; PAR_7 = 0.01; PAR_8 = 1e-4; PAR_9 = 3;\n"
                                            "  }\n"
                                            "}\n")});
  CHECK(cycle.code == cli::kValidationError);
  CHECK(Contains(cycle.err, "a -> b -> a"));

  auto unknown = RunCli({"validate", TempFile("unknown.rvm",
                                              "workflow \"w\" { instance x : builtin.maintenance7 "
                                              "{ } }")});
  CHECK(unknown.code == cli::kValidationError);
  CHECK(Contains(unknown.err, "maintenance7"));

  CHECK(RunCli({"validate", "missing.rvm"}).code == cli::kParseError);
}

}  // namespace
}  // namespace redvote
