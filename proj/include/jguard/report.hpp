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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "jguard/attack.hpp"
#include "jguard/eval.hpp"

namespace jguard {

inline constexpr const char* kReportFormat = "jguard-report-v1";

struct ReportSet {
  std::vector<EvalReport> evaluations;
  std::vector<RobustnessReport> robustness;

  bool empty() const { return evaluations.empty() && robustness.empty(); }
  void append(const ReportSet& other);
};

/// {"format": "jguard-report-v1", "evaluations": [...], "robustness": [...]}
std::string render_report_json(const ReportSet& reports);
ReportSet parse_report_json(const std::string& document);
ReportSet load_report(const std::filesystem::path& path);

/// Fixed-width tables: detectors as rows, generators as columns (AUROC),
/// then detectors against generator/attack pairs (pre, post, delta).
std::string render_report_table(const ReportSet& reports);

/// Writes the JSON document to `path` and the table next to it with a .txt
/// extension. Throws UsageError when there is nothing to report.
void emit_report(const ReportSet& reports, const std::filesystem::path& path);

}  // namespace jguard
