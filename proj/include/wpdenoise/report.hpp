// Copyright 2026 The wpdenoise Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WPDENOISE_REPORT_HPP_
#define WPDENOISE_REPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace wpdenoise {

// One (record, method) outcome. Metric fields are NaN when status != "ok".
struct RecordResult {
  std::string record_id;
  std::string method;
  std::string wavelet;
  std::string status = "ok";
  double delta_snr_db = 0.0;
  double eta_percent = 0.0;
  double rho_before = 0.0;
  double rho_after = 0.0;
  std::vector<std::string> removed_components;

  bool ok() const { return status == "ok"; }
  friend bool operator==(const RecordResult&, const RecordResult&);
};

// Mean and sample standard deviation per method over successful,
// non-excluded records.
struct SummaryRow {
  std::string method;
  std::string wavelet;
  int count = 0;
  double mean_delta_snr_db = 0.0;
  double std_delta_snr_db = 0.0;
  double mean_eta_percent = 0.0;
  double std_eta_percent = 0.0;

  friend bool operator==(const SummaryRow&, const SummaryRow&);
};

struct EvalReport {
  std::string protocol;
  std::vector<std::string> excluded_ids;
  std::vector<RecordResult> records;
  std::vector<SummaryRow> summary;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

enum class ReportFormat { kCsv, kJson, kMarkdown };

ReportFormat parse_report_format(const std::string& text);

// Recomputes summary rows from `records`, skipping ids in excluded_ids.
// Methods appear in order of first occurrence.
void summarize(EvalReport& report);

std::string render_report(const EvalReport& report, ReportFormat format);
EvalReport parse_json_report(const std::string& text);

void write_report(const EvalReport& report, ReportFormat format, const std::filesystem::path& path);
EvalReport read_json_report(const std::filesystem::path& path);

// "29.26 (10.29)"
std::string mean_std_cell(double mean, double stddev);

}  // namespace wpdenoise

#endif  // WPDENOISE_REPORT_HPP_
