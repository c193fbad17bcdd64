// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

/// @file report.h
/// Analysis reports and their text, JSON and CSV renderings.

#ifndef REDVOTE_REPORT_REPORT_H_
#define REDVOTE_REPORT_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redvote/compose/engine.h"
#include "json.hpp"

namespace redvote::report {

/// Threshold comparison of one export against a tolerable hazard rate.
struct Verdict {
  std::string metric;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;  ///< value <= threshold.

  bool operator==(const Verdict&) const = default;
};

struct PosteriorRow {
  std::string variable;
  std::vector<std::pair<std::string, double>> states;

  bool operator==(const PosteriorRow&) const = default;
};

struct PosteriorTable {
  std::string instance;
  std::vector<std::pair<std::string, std::string>> evidence;
  std::vector<PosteriorRow> rows;  ///< Sorted by variable id.

  bool operator==(const PosteriorTable&) const = default;
};

struct AnalysisReport {
  std::string workflow;
  std::vector<InstanceOutputs> instances;
  std::vector<std::pair<std::string, double>> exports;
  std::optional<PosteriorTable> posteriors;
  std::optional<Verdict> verdict;
  std::string sil_band;  ///< Informational band of the verdict metric, or empty.
  std::string tool_version;
  std::string input_digest;  ///< "sha256:<hex>" of the input file bytes.
  std::string generated_at;  ///< UTC timestamp; not covered by the digest.

  bool operator==(const AnalysisReport&) const = default;
};

/// Hex SHA-256 of `bytes`, prefixed with "sha256:".
std::string InputDigest(std::string_view bytes);

/// SIL band whose tolerable hazard rate interval [10^-(k+5), 10^-(k+4))
/// contains `hazard_rate` per hour: "SIL 4" .. "SIL 1", "beyond SIL 4"
/// below 1e-9, "below SIL 1" from 1e-5 up.
std::string SilBand(double hazard_rate);

/// Compares the export named `metric` with `threshold`.
/// Throws ValidationError when the export does not exist.
Verdict MakeVerdict(const std::vector<std::pair<std::string, double>>& exports,
                    std::string_view metric, double threshold);

/// Current time as "YYYY-MM-DDTHH:MM:SSZ".
std::string UtcTimestamp();

/// Scientific notation with five significant digits, e.g. "2.1908e-06".
std::string FormatValue(double value);

std::string RenderText(const AnalysisReport& report, bool color);
std::string RenderJson(const AnalysisReport& report);
std::string RenderCsv(const AnalysisReport& report);

void to_json(nlohmann::json& j, const AnalysisReport& report);
void from_json(const nlohmann::json& j, AnalysisReport& report);

/// Inverse of RenderJson. Throws Error on malformed input.
AnalysisReport ParseJsonReport(std::string_view text);

struct SweepTable {
  std::string workflow;
  std::string parameter;
  std::vector<std::string> columns;  ///< Export names.
  std::vector<std::pair<double, std::vector<double>>> rows;
  std::string tool_version;
  std::string input_digest;
};

SweepTable MakeSweepTable(std::string workflow, std::string parameter,
                          const std::vector<SweepRow>& rows);

std::string RenderText(const SweepTable& table, bool color);
std::string RenderJson(const SweepTable& table);
/// Columns: factor, then the export names.
std::string RenderCsv(const SweepTable& table);

/// RFC 4180 field quoting.
std::string CsvField(std::string_view field);

}  // namespace redvote::report

#endif  // REDVOTE_REPORT_REPORT_H_
