// Copyright 2026 The redvote Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include "redvote/report/report.h"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "redvote/error.h"

namespace redvote::report {

namespace {

using json = nlohmann::json;

constexpr const char* kSchema = "redvote-report/1";
constexpr const char* kSweepSchema = "redvote-sweep/1";

struct Style {
  bool on;
  std::string Bold(std::string_view s) const { return Wrap("1", s); }
  std::string Green(std::string_view s) const { return Wrap("1;32", s); }
  std::string Red(std::string_view s) const { return Wrap("1;31", s); }
  std::string Wrap(std::string_view code, std::string_view s) const {
    if (!on) return std::string(s);
    return "\x1b[" + std::string(code) + "m" + std::string(s) + "\x1b[0m";
  }
};

// Shortest text that reads back to the same double.
std::string Exact(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string Pad(std::string_view s, std::size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

std::string TrimRight(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

json NamedValues(const std::vector<std::pair<std::string, double>>& values) {
  json arr = json::array();
  for (const auto& [name, value] : values) arr.push_back({{"name", name}, {"value", value}});
  return arr;
}

std::vector<std::pair<std::string, double>> NamedValuesFrom(const json& arr) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& e : arr) {
    out.emplace_back(e.at("name").get<std::string>(), e.at("value").get<double>());
  }
  return out;
}

std::size_t NameWidth(const AnalysisReport& r) {
  std::size_t w = 8;
  for (const auto& inst : r.instances) {
    for (const auto& [name, v] : inst.values) w = std::max(w, name.size());
  }
  for (const auto& [name, v] : r.exports) w = std::max(w, name.size());
  return w + 2;
}

}  // namespace

std::string InputDigest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

std::string SilBand(double hazard_rate) {
  if (!(hazard_rate >= 0.0) || !std::isfinite(hazard_rate)) return "";
  if (hazard_rate < 1e-9) return "beyond SIL 4";
  if (hazard_rate < 1e-8) return "SIL 4";
  if (hazard_rate < 1e-7) return "SIL 3";
  if (hazard_rate < 1e-6) return "SIL 2";
  if (hazard_rate < 1e-5) return "SIL 1";
  return "below SIL 1";
}

Verdict MakeVerdict(const std::vector<std::pair<std::string, double>>& exports,
                    std::string_view metric, double threshold) {
  for (const auto& [name, value] : exports) {
    if (name == metric) return {name, value, threshold, value <= threshold};
  }
  throw ValidationError("verdict metric '" + std::string(metric) +
                        "' is not an export of the workflow");
}

std::string UtcTimestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string FormatValue(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4e", value);
  return buf;
}

std::string RenderText(const AnalysisReport& r, bool color) {
  const Style st{color};
  std::ostringstream os;
  os << st.Bold("workflow") << ' ' << r.workflow << '\n';
  os << "  tool    redvote " << r.tool_version << '\n';
  os << "  input   " << r.input_digest << '\n';
  if (!r.generated_at.empty()) os << "  time    " << r.generated_at << '\n';
  const std::size_t w = NameWidth(r);
  if (!r.instances.empty()) {
    os << '\n' << st.Bold("instance outputs") << '\n';
    for (const auto& inst : r.instances) {
      os << "  " << inst.instance << '\n';
      for (const auto& [name, value] : inst.values) {
        os << "    " << Pad(name, w) << FormatValue(value) << '\n';
      }
    }
  }
  if (!r.exports.empty()) {
    os << '\n' << st.Bold("exports") << '\n';
    for (const auto& [name, value] : r.exports) {
      os << "  " << Pad(name, w + 2) << FormatValue(value) << '\n';
    }
  }
  if (r.posteriors) {
    const auto& p = *r.posteriors;
    os << '\n' << st.Bold("posteriors") << " of " << p.instance;
    if (!p.evidence.empty()) {
      os << " given ";
      for (std::size_t i = 0; i < p.evidence.size(); ++i) {
        os << (i ? ", " : "") << p.evidence[i].first << '=' << p.evidence[i].second;
      }
    }
    os << '\n';
    std::size_t vw = 8, sw = 5;
    for (const auto& row : p.rows) {
      vw = std::max(vw, row.variable.size());
      for (const auto& [s, v] : row.states) sw = std::max(sw, s.size());
    }
    for (const auto& row : p.rows) {
      for (std::size_t k = 0; k < row.states.size(); ++k) {
        os << "  " << Pad(k == 0 ? row.variable : "", vw + 2)
           << Pad(row.states[k].first, sw + 2) << FormatValue(row.states[k].second) << '\n';
      }
    }
  }
  if (r.verdict) {
    const auto& v = *r.verdict;
    os << '\n' << st.Bold("verdict") << ' '
       << (v.pass ? st.Green("PASS") : st.Red("FAIL")) << "  " << v.metric << " = "
       << FormatValue(v.value) << (v.pass ? " <= " : " > ") << "threshold "
       << FormatValue(v.threshold) << '\n';
    if (!r.sil_band.empty()) os << "  band    " << r.sil_band << " (informational)\n";
  }
  return os.str();
}

void to_json(json& j, const AnalysisReport& r) {
  j = json::object();
  j["schema"] = kSchema;
  j["workflow"] = r.workflow;
  j["tool_version"] = r.tool_version;
  j["input_digest"] = r.input_digest;
  j["generated_at"] = r.generated_at;
  json instances = json::array();
  for (const auto& inst : r.instances) {
    instances.push_back({{"name", inst.instance}, {"outputs", NamedValues(inst.values)}});
  }
  j["instances"] = std::move(instances);
  j["exports"] = NamedValues(r.exports);
  if (r.posteriors) {
    json ev = json::array();
    for (const auto& [var, state] : r.posteriors->evidence) {
      ev.push_back({{"variable", var}, {"state", state}});
    }
    json rows = json::array();
    for (const auto& row : r.posteriors->rows) {
      json states = json::array();
      for (const auto& [s, p] : row.states) states.push_back({{"state", s}, {"probability", p}});
      rows.push_back({{"variable", row.variable}, {"states", std::move(states)}});
    }
    j["posteriors"] = {
        {"instance", r.posteriors->instance}, {"evidence", std::move(ev)}, {"rows", std::move(rows)}};
  }
  if (r.verdict) {
    j["verdict"] = {{"metric", r.verdict->metric},
                    {"value", r.verdict->value},
                    {"threshold", r.verdict->threshold},
                    {"pass", r.verdict->pass},
                    {"sil_band", r.sil_band}};
  }
}

void from_json(const json& j, AnalysisReport& r) {
  if (j.at("schema").get<std::string>() != kSchema) {
    throw Error("unsupported report schema " + j.at("schema").dump());
  }
  r = AnalysisReport{};
  r.workflow = j.at("workflow").get<std::string>();
  r.tool_version = j.at("tool_version").get<std::string>();
  r.input_digest = j.at("input_digest").get<std::string>();
  r.generated_at = j.at("generated_at").get<std::string>();
  for (const auto& inst : j.at("instances")) {
    r.instances.push_back(
        {inst.at("name").get<std::string>(), NamedValuesFrom(inst.at("outputs"))});
  }
  r.exports = NamedValuesFrom(j.at("exports"));
  if (j.contains("posteriors")) {
    const auto& p = j["posteriors"];
    PosteriorTable t;
    t.instance = p.at("instance").get<std::string>();
    for (const auto& e : p.at("evidence")) {
      t.evidence.emplace_back(e.at("variable").get<std::string>(),
                              e.at("state").get<std::string>());
    }
    for (const auto& row : p.at("rows")) {
      PosteriorRow pr{row.at("variable").get<std::string>(), {}};
      for (const auto& s : row.at("states")) {
        pr.states.emplace_back(s.at("state").get<std::string>(),
                               s.at("probability").get<double>());
      }
      t.rows.push_back(std::move(pr));
    }
    r.posteriors = std::move(t);
  }
  if (j.contains("verdict")) {
    const auto& v = j["verdict"];
    r.verdict = Verdict{v.at("metric").get<std::string>(), v.at("value").get<double>(),
                        v.at("threshold").get<double>(), v.at("pass").get<bool>()};
    r.sil_band = v.at("sil_band").get<std::string>();
  }
}

std::string RenderJson(const AnalysisReport& report) {
  return json(report).dump(2) + "\n";
}

AnalysisReport ParseJsonReport(std::string_view text) {
  try {
    return json::parse(text).get<AnalysisReport>();
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string RenderCsv(const AnalysisReport& r) {
  std::ostringstream os;
  auto row = [&](std::string_view section, std::string_view scope, std::string_view name,
                 std::string_view value) {
    os << CsvField(section) << ',' << CsvField(scope) << ',' << CsvField(name) << ','
       << CsvField(value) << "\r\n";
  };
  row("section", "scope", "name", "value");
  row("meta", "", "workflow", r.workflow);
  row("meta", "", "tool_version", r.tool_version);
  row("meta", "", "input_digest", r.input_digest);
  row("meta", "", "generated_at", r.generated_at);
  for (const auto& inst : r.instances) {
    for (const auto& [name, value] : inst.values) row("output", inst.instance, name, Exact(value));
  }
  for (const auto& [name, value] : r.exports) row("export", "", name, Exact(value));
  if (r.posteriors) {
    for (const auto& [var, state] : r.posteriors->evidence) row("evidence", var, state, "1");
    for (const auto& pr : r.posteriors->rows) {
      for (const auto& [s, p] : pr.states) row("posterior", pr.variable, s, Exact(p));
    }
  }
  if (r.verdict) {
    row("verdict", r.verdict->metric, "value", Exact(r.verdict->value));
    row("verdict", r.verdict->metric, "threshold", Exact(r.verdict->threshold));
    row("verdict", r.verdict->metric, "pass", r.verdict->pass ? "true" : "false");
    row("verdict", r.verdict->metric, "sil_band", r.sil_band);
  }
  return os.str();
}

SweepTable MakeSweepTable(std::string workflow, std::string parameter,
                          const std::vector<SweepRow>& rows) {
  SweepTable t;
  t.workflow = std::move(workflow);
  t.parameter = std::move(parameter);
  if (!rows.empty()) {
    for (const auto& [name, v] : rows.front().result.exports) t.columns.push_back(name);
  }
  for (const auto& row : rows) {
    std::vector<double> values;
    for (const auto& [name, v] : row.result.exports) values.push_back(v);
    t.rows.emplace_back(row.factor, std::move(values));
  }
  return t;
}

std::string RenderText(const SweepTable& t, bool color) {
  const Style st{color};
  std::ostringstream os;
  os << st.Bold("sweep") << ' ' << t.workflow << "  parameter " << t.parameter << '\n';
  os << "  tool    redvote " << t.tool_version << '\n';
  os << "  input   " << t.input_digest << "\n\n";
  std::vector<std::size_t> widths;
  std::string line = "  " + Pad("factor", 12);
  for (const auto& c : t.columns) {
    widths.push_back(std::max<std::size_t>(c.size(), 10) + 2);
    line += Pad(c, widths.back());
  }
  os << TrimRight(line) << '\n';
  for (const auto& [factor, values] : t.rows) {
    line = "  " + Pad(Exact(factor), 12);
    for (std::size_t k = 0; k < values.size(); ++k) line += Pad(FormatValue(values[k]), widths[k]);
    os << TrimRight(line) << '\n';
  }
  return os.str();
}

std::string RenderJson(const SweepTable& t) {
  json rows = json::array();
  for (const auto& [factor, values] : t.rows) {
    json exports = json::array();
    for (std::size_t k = 0; k < values.size(); ++k) {
      exports.push_back({{"name", t.columns[k]}, {"value", values[k]}});
    }
    rows.push_back({{"factor", factor}, {"exports", std::move(exports)}});
  }
  json j = {{"schema", kSweepSchema},
            {"workflow", t.workflow},
            {"parameter", t.parameter},
            {"tool_version", t.tool_version},
            {"input_digest", t.input_digest},
            {"rows", std::move(rows)}};
  return j.dump(2) + "\n";
}

std::string RenderCsv(const SweepTable& t) {
  std::ostringstream os;
  os << "factor";
  for (const auto& c : t.columns) os << ',' << CsvField(c);
  os << "\r\n";
  for (const auto& [factor, values] : t.rows) {
    os << Exact(factor);
    for (double v : values) os << ',' << Exact(v);
    os << "\r\n";
  }
  return os.str();
}

}  // namespace redvote::report
