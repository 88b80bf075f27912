// Copyright 2026 The jguard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jguard/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jguard/error.hpp"

namespace jguard {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() < width ? std::string(width - s.size(), ' ') + s : s;
}

template <typename T>
void push_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::string evaluation_table(const std::vector<EvalReport>& reports) {
  std::vector<std::string> detectors, generators;
  for (const auto& r : reports) {
    push_unique(detectors, r.detector);
    push_unique(generators, r.generator);
  }
  std::size_t first = 8;
  for (const auto& d : detectors) first = std::max(first, d.size());
  std::vector<std::size_t> widths;
  for (const auto& g : generators) widths.push_back(std::max<std::size_t>(g.size(), 6));

  std::string out = pad_right("Detector", first);
  for (std::size_t c = 0; c < generators.size(); ++c) out += "  " + pad_left(generators[c], widths[c]);
  out += '\n';
  for (const auto& d : detectors) {
    std::string line = pad_right(d, first);
    for (std::size_t c = 0; c < generators.size(); ++c) {
      std::string cell = "-";
      for (const auto& r : reports) {
        if (r.detector == d && r.generator == generators[c]) cell = fixed4(r.auroc);
      }
      line += "  " + pad_left(cell, widths[c]);
    }
    out += line + '\n';
  }
  return out;
}

std::string robustness_table(const std::vector<RobustnessReport>& reports) {
  const std::vector<std::string> header = {"Detector", "Generator", "Attack", "Pre", "Post", "Delta"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    rows.push_back({r.detector, r.generator, r.attack, fixed4(r.auroc_pre), fixed4(r.auroc_post),
                    fixed4(r.delta)});
  }
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
  }
  auto render = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      line += c < 3 ? pad_right(row[c], widths[c]) : pad_left(row[c], widths[c]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line + '\n';
  };
  std::string out = render(header);
  for (const auto& row : rows) out += render(row);
  return out;
}

template <typename T>
T field(const nlohmann::json& obj, const char* key) {
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string("report entry is missing a valid '") + key + "'");
  }
}

}  // namespace

void ReportSet::append(const ReportSet& other) {
  evaluations.insert(evaluations.end(), other.evaluations.begin(), other.evaluations.end());
  robustness.insert(robustness.end(), other.robustness.begin(), other.robustness.end());
}

std::string render_report_json(const ReportSet& reports) {
  ordered_json doc;
  doc["format"] = kReportFormat;
  ordered_json evals = ordered_json::array();
  for (const auto& r : reports.evaluations) {
    ordered_json e;
    e["detector"] = r.detector;
    e["generator"] = r.generator;
    e["auroc"] = r.auroc;
    e["n_test"] = r.n_test;
    e["config_digest"] = r.config_digest;
    evals.push_back(std::move(e));
  }
  ordered_json robust = ordered_json::array();
  for (const auto& r : reports.robustness) {
    ordered_json e;
    e["detector"] = r.detector;
    e["generator"] = r.generator;
    e["attack"] = r.attack;
    e["auroc_pre"] = r.auroc_pre;
    e["auroc_post"] = r.auroc_post;
    e["delta"] = r.delta;
    robust.push_back(std::move(e));
  }
  doc["evaluations"] = std::move(evals);
  doc["robustness"] = std::move(robust);
  return doc.dump(2) + "\n";
}

ReportSet parse_report_json(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error&) {
    throw DataError("report is not valid JSON");
  }
  if (!doc.is_object() || doc.value("format", "") != kReportFormat) {
    throw VersionError("unsupported report format (expected " + std::string(kReportFormat) + ")");
  }
  ReportSet out;
  for (const auto& e : doc.value("evaluations", nlohmann::json::array())) {
    EvalReport r;
    r.detector = field<std::string>(e, "detector");
    r.generator = field<std::string>(e, "generator");
    r.auroc = field<double>(e, "auroc");
    r.n_test = field<std::size_t>(e, "n_test");
    r.config_digest = field<std::string>(e, "config_digest");
    out.evaluations.push_back(std::move(r));
  }
  for (const auto& e : doc.value("robustness", nlohmann::json::array())) {
    RobustnessReport r;
    r.detector = field<std::string>(e, "detector");
    r.generator = field<std::string>(e, "generator");
    r.attack = field<std::string>(e, "attack");
    r.auroc_pre = field<double>(e, "auroc_pre");
    r.auroc_post = field<double>(e, "auroc_post");
    r.delta = field<double>(e, "delta");
    out.robustness.push_back(std::move(r));
  }
  return out;
}

ReportSet load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_report_json(buf.str());
}

std::string render_report_table(const ReportSet& reports) {
  std::string out;
  if (!reports.evaluations.empty()) out += evaluation_table(reports.evaluations);
  if (!reports.robustness.empty()) {
    if (!out.empty()) out += '\n';
    out += robustness_table(reports.robustness);
  }
  return out;
}

void emit_report(const ReportSet& reports, const std::filesystem::path& path) {
  if (reports.empty()) throw UsageError("nothing to report");
  std::filesystem::path table = path;
  table.replace_extension(".txt");
  if (table == path) table += ".txt";
  write_file(path, render_report_json(reports));
  write_file(table, render_report_table(reports));
}

}  // namespace jguard
