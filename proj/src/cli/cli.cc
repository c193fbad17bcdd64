// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "redvote/cli/cli.h"

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "redvote/bayes/inference.h"
#include "redvote/compose/engine.h"
#include "redvote/dsl/dsl.h"
#include "redvote/report/report.h"

#ifndef REDVOTE_VERSION
#define REDVOTE_VERSION "0.0.0"
#endif

namespace redvote::cli {

namespace {

enum class Format { kText, kJson, kCsv };

// Failure that has already been reported; carries the exit code.
struct Exit {
  int code;
};

struct Options {
  std::string file;
  std::string format = "text";
  std::string out;
  std::optional<double> threshold;
  std::string metric;
  std::string instance;
  std::vector<std::string> evidence;
  std::string param;
  std::vector<double> factors;
};

struct Loaded {
  dsl::SourceFile source;
  ValidatedWorkflow workflow;
};

Format FormatOf(const std::string& name) {
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  return Format::kText;
}

Loaded Load(const std::string& path, Streams& io) {
  dsl::SourceFile source;
  try {
    source = dsl::ReadSourceFile(path);
  } catch (const dsl::ParseError& e) {
    for (const auto& d : e.diagnostics()) io.err << d.Format(e.origin()) << '\n';
    throw Exit{kParseError};
  }
  auto parsed = dsl::Parse(source);
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics) io.err << d.Format(source.origin) << '\n';
    throw Exit{kParseError};
  }
  return {source, ValidateWorkflow(std::move(*parsed.workflow))};
}

void Emit(const std::string& text, const Options& opt, Streams& io) {
  if (opt.out.empty()) {
    io.out << text;
    io.out.flush();
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  f << text;
  f.close();
  if (!f) {
    io.err << opt.out << ": error: cannot write output file\n";
    throw Exit{kParseError};
  }
}

// Styling only applies to text written to the terminal.
bool Styled(const Options& opt, const Streams& io) {
  return io.color && opt.out.empty() && FormatOf(opt.format) == Format::kText;
}

std::string Render(const report::AnalysisReport& r, const Options& opt, const Streams& io) {
  switch (FormatOf(opt.format)) {
    case Format::kJson: return report::RenderJson(r);
    case Format::kCsv: return report::RenderCsv(r);
    case Format::kText: break;
  }
  return report::RenderText(r, Styled(opt, io));
}

report::AnalysisReport BaseReport(const Loaded& in) {
  report::AnalysisReport r;
  r.workflow = in.workflow.workflow().name;
  r.tool_version = REDVOTE_VERSION;
  r.input_digest = report::InputDigest(in.source.text);
  r.generated_at = report::UtcTimestamp();
  return r;
}

int Solve(const Options& opt, Streams& io) {
  Loaded in = Load(opt.file, io);
  SolveResult result = RunWorkflow(in.workflow);
  report::AnalysisReport r = BaseReport(in);
  r.instances = result.instances;
  r.exports = result.exports;
  if (opt.threshold) {
    std::string metric = opt.metric;
    if (metric.empty()) {
      if (result.exports.empty()) {
        throw ValidationError("--threshold needs an export to compare; the workflow has none");
      }
      metric = result.exports.front().first;
    }
    r.verdict = report::MakeVerdict(result.exports, metric, *opt.threshold);
    r.sil_band = report::SilBand(r.verdict->value);
  }
  Emit(Render(r, opt, io), opt, io);
  return r.verdict && !r.verdict->pass ? kVerdictFail : kOk;
}

int Posteriors(const Options& opt, Streams& io) {
  Loaded in = Load(opt.file, io);
  bayes::BayesNet net = InstanceNet(in.workflow, opt.instance);
  bayes::Evidence evidence;
  report::PosteriorTable table;
  table.instance = opt.instance;
  for (const auto& item : opt.evidence) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      io.err << "error: evidence '" << item << "' must be NODE=STATE\n";
      throw Exit{kParseError};
    }
    std::string var = item.substr(0, eq), state = item.substr(eq + 1);
    net.StateIndex(net.IndexOf(var), state);  // reject unknown names early
    if (!evidence.emplace(var, state).second) {
      throw ValidationError("evidence on '" + var + "' given more than once");
    }
    table.evidence.emplace_back(var, state);
  }
  for (const auto& dist : bayes::PosteriorReport(net, evidence)) {
    report::PosteriorRow row{dist.variable, {}};
    for (std::size_t k = 0; k < dist.states.size(); ++k) {
      row.states.emplace_back(dist.states[k], dist.probabilities[k]);
    }
    table.rows.push_back(std::move(row));
  }
  report::AnalysisReport r = BaseReport(in);
  r.posteriors = std::move(table);
  Emit(Render(r, opt, io), opt, io);
  return kOk;
}

int SweepCommand(const Options& opt, Streams& io) {
  for (double f : opt.factors) {
    if (!std::isfinite(f) || f < 0.0) {
      io.err << "error: sweep factors must be finite and non-negative\n";
      throw Exit{kParseError};
    }
  }
  Loaded in = Load(opt.file, io);
  auto rows = Sweep(in.workflow, opt.param, opt.factors);
  auto table = report::MakeSweepTable(in.workflow.workflow().name, opt.param, rows);
  table.tool_version = REDVOTE_VERSION;
  table.input_digest = report::InputDigest(in.source.text);
  std::string text;
  switch (FormatOf(opt.format)) {
    case Format::kJson: text = report::RenderJson(table); break;
    case Format::kCsv: text = report::RenderCsv(table); break;
    case Format::kText: text = report::RenderText(table, Styled(opt, io)); break;
  }
  Emit(text, opt, io);
  return kOk;
}

int Validate(const Options& opt, Streams& io) {
  Load(opt.file, io);
  return kOk;
}

void AddOutputOptions(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--out", opt.out, "Write the report to this file instead of stdout");
}

}  // namespace

bool ColorWanted() {
  return std::getenv("REDVOTE_NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO);
}

int Run(const std::vector<std::string>& args, Streams io) {
  Options opt;
  CLI::App app{"Safety analysis of redundant voting architectures", "redvote"};
  app.set_version_flag("--version", REDVOTE_VERSION);
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Solve a workflow and report its outputs");
  solve->add_option("file", opt.file, "Workflow file (.rvm)")->required();
  AddOutputOptions(solve, opt);
  solve->add_option("--threshold", opt.threshold, "Tolerable hazard rate for the verdict");
  solve->add_option("--metric", opt.metric, "Export compared with --threshold (default: first)");

  auto* post = app.add_subcommand("posteriors", "Posterior marginals of a BAYES instance");
  post->add_option("file", opt.file, "Workflow file (.rvm)")->required();
  post->add_option("instance", opt.instance, "BAYES instance name")->required();
  post->add_option("--evidence", opt.evidence, "Observation NODE=STATE (repeatable)");
  AddOutputOptions(post, opt);

  auto* sweep = app.add_subcommand("sweep", "Rerun a workflow with one input scaled");
  sweep->add_option("file", opt.file, "Workflow file (.rvm)")->required();
  sweep->add_option("--param", opt.param, "Literal-bound input, instance.PARAM")->required();
  sweep->add_option("--factors", opt.factors, "Comma-separated scale factors")
      ->required()
      ->delimiter(',');
  AddOutputOptions(sweep, opt);

  auto* validate = app.add_subcommand("validate", "Parse and validate a workflow");
  validate->add_option("file", opt.file, "Workflow file (.rvm)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (solve->parsed()) return Solve(opt, io);
    if (post->parsed()) return Posteriors(opt, io);
    if (sweep->parsed()) return SweepCommand(opt, io);
    return Validate(opt, io);
  } catch (const Exit& e) {
    return e.code;
  } catch (const ValidationError& e) {
    io.err << opt.file << ": error: " << e.what() << '\n';
    return kValidationError;
  } catch (const NumericError& e) {
    io.err << opt.file << ": error: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    io.err << opt.file << ": error: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace redvote::cli
