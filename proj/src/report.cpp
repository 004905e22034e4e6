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

#include "wpdenoise/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wpdenoise/record.hpp"

namespace wpdenoise {
namespace {

using nlohmann::json;

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

std::string fixed2(double v) {
  if (!std::isfinite(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  // "-0.00" reads badly in a table.
  return std::string(buf) == "-0.00" ? "0.00" : buf;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double v) { return std::isfinite(v) ? format_double(v) : ""; }

std::string render_csv(const EvalReport& r) {
  std::ostringstream out;
  out << "row_type,record_id,method,wavelet,status,count,delta_snr_db,delta_snr_std,eta_percent,eta_std,"
         "rho_before,rho_after,removed_components\n";
  for (const RecordResult& x : r.records) {
    out << "record," << csv_field(x.record_id) << ',' << x.method << ',' << x.wavelet << ',' << csv_field(x.status)
        << ",1," << csv_number(x.delta_snr_db) << ",," << csv_number(x.eta_percent) << ",,"
        << csv_number(x.rho_before) << ',' << csv_number(x.rho_after) << ','
        << csv_field(join(x.removed_components, ";")) << '\n';
  }
  for (const SummaryRow& s : r.summary) {
    out << "summary,," << s.method << ',' << s.wavelet << ",," << s.count << ',' << csv_number(s.mean_delta_snr_db)
        << ',' << csv_number(s.std_delta_snr_db) << ',' << csv_number(s.mean_eta_percent) << ','
        << csv_number(s.std_eta_percent) << ",,,\n";
  }
  return out.str();
}

std::string render_markdown(const EvalReport& r) {
  std::ostringstream out;
  out << "# Evaluation report";
  if (!r.protocol.empty()) out << " (" << r.protocol << ")";
  out << "\n\n";
  if (!r.excluded_ids.empty()) out << "Excluded records: " << join(r.excluded_ids, ", ") << "\n\n";
  out << "## Summary\n\n"
      << "Mean with standard deviation in brackets.\n\n"
      << "| Method | Records | ΔSNR (dB) | η (%) |\n"
      << "|---|---:|---:|---:|\n";
  for (const SummaryRow& s : r.summary) {
    out << "| " << s.method << " | " << s.count << " | " << mean_std_cell(s.mean_delta_snr_db, s.std_delta_snr_db)
        << " | " << mean_std_cell(s.mean_eta_percent, s.std_eta_percent) << " |\n";
  }
  out << "\n## Records\n\n"
      << "| Record | Method | ΔSNR (dB) | η (%) | ρ before | ρ after | Removed | Status |\n"
      << "|---|---|---:|---:|---:|---:|---|---|\n";
  for (const RecordResult& x : r.records) {
    out << "| " << x.record_id << " | " << x.method << " | " << fixed2(x.delta_snr_db) << " | "
        << fixed2(x.eta_percent) << " | " << fixed2(x.rho_before) << " | " << fixed2(x.rho_after) << " | "
        << join(x.removed_components, ", ") << " | " << x.status << " |\n";
  }
  return out.str();
}

json to_json(const EvalReport& r) {
  json j;
  j["protocol"] = r.protocol;
  j["excluded_ids"] = r.excluded_ids;
  j["records"] = json::array();
  for (const RecordResult& x : r.records) {
    j["records"].push_back({{"record_id", x.record_id},
                            {"method", x.method},
                            {"wavelet", x.wavelet},
                            {"status", x.status},
                            {"delta_snr_db", number(x.delta_snr_db)},
                            {"eta_percent", number(x.eta_percent)},
                            {"rho_before", number(x.rho_before)},
                            {"rho_after", number(x.rho_after)},
                            {"removed_components", x.removed_components}});
  }
  j["summary"] = json::array();
  for (const SummaryRow& s : r.summary) {
    j["summary"].push_back({{"method", s.method},
                            {"wavelet", s.wavelet},
                            {"count", s.count},
                            {"mean_delta_snr_db", number(s.mean_delta_snr_db)},
                            {"std_delta_snr_db", number(s.std_delta_snr_db)},
                            {"mean_eta_percent", number(s.mean_eta_percent)},
                            {"std_eta_percent", number(s.std_eta_percent)}});
  }
  return j;
}

}  // namespace

bool operator==(const RecordResult& a, const RecordResult& b) {
  return a.record_id == b.record_id && a.method == b.method && a.wavelet == b.wavelet && a.status == b.status &&
         same(a.delta_snr_db, b.delta_snr_db) && same(a.eta_percent, b.eta_percent) &&
         same(a.rho_before, b.rho_before) && same(a.rho_after, b.rho_after) &&
         a.removed_components == b.removed_components;
}

bool operator==(const SummaryRow& a, const SummaryRow& b) {
  return a.method == b.method && a.wavelet == b.wavelet && a.count == b.count &&
         same(a.mean_delta_snr_db, b.mean_delta_snr_db) && same(a.std_delta_snr_db, b.std_delta_snr_db) &&
         same(a.mean_eta_percent, b.mean_eta_percent) && same(a.std_eta_percent, b.std_eta_percent);
}

ReportFormat parse_report_format(const std::string& text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  if (text == "markdown" || text == "md") return ReportFormat::kMarkdown;
  throw std::invalid_argument("unknown report format '" + text + "' (csv, json, markdown)");
}

std::string mean_std_cell(double mean, double stddev) { return fixed2(mean) + " (" + fixed2(stddev) + ")"; }

void summarize(EvalReport& report) {
  const std::set<std::string> excluded(report.excluded_ids.begin(), report.excluded_ids.end());
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RecordResult*>> groups;
  std::map<std::string, std::string> wavelets;
  for (const RecordResult& x : report.records) {
    if (!groups.contains(x.method)) order.push_back(x.method);
    auto& group = groups[x.method];
    wavelets[x.method] = x.wavelet;
    if (x.ok() && !excluded.contains(x.record_id)) group.push_back(&x);
  }
  report.summary.clear();
  for (const std::string& method : order) {
    const auto& group = groups[method];
    SummaryRow row;
    row.method = method;
    row.wavelet = wavelets[method];
    row.count = static_cast<int>(group.size());
    const auto stats = [&](double RecordResult::*field, double& mean, double& stddev) {
      if (group.empty()) {
        mean = stddev = std::nan("");
        return;
      }
      double sum = 0.0;
      for (const RecordResult* x : group) sum += x->*field;
      mean = sum / static_cast<double>(group.size());
      double ss = 0.0;
      for (const RecordResult* x : group) ss += (x->*field - mean) * (x->*field - mean);
      stddev = group.size() > 1 ? std::sqrt(ss / static_cast<double>(group.size() - 1)) : 0.0;
    };
    stats(&RecordResult::delta_snr_db, row.mean_delta_snr_db, row.std_delta_snr_db);
    stats(&RecordResult::eta_percent, row.mean_eta_percent, row.std_eta_percent);
    report.summary.push_back(row);
  }
}

std::string render_report(const EvalReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv:
      return render_csv(report);
    case ReportFormat::kJson:
      return to_json(report).dump(2) + "\n";
    case ReportFormat::kMarkdown:
      return render_markdown(report);
  }
  return {};
}

EvalReport parse_json_report(const std::string& text) {
  EvalReport r;
  try {
    const json j = json::parse(text);
    r.protocol = j.at("protocol").get<std::string>();
    r.excluded_ids = j.at("excluded_ids").get<std::vector<std::string>>();
    for (const json& x : j.at("records")) {
      RecordResult rr;
      rr.record_id = x.at("record_id").get<std::string>();
      rr.method = x.at("method").get<std::string>();
      rr.wavelet = x.at("wavelet").get<std::string>();
      rr.status = x.at("status").get<std::string>();
      rr.delta_snr_db = number_from(x.at("delta_snr_db"));
      rr.eta_percent = number_from(x.at("eta_percent"));
      rr.rho_before = number_from(x.at("rho_before"));
      rr.rho_after = number_from(x.at("rho_after"));
      rr.removed_components = x.at("removed_components").get<std::vector<std::string>>();
      r.records.push_back(std::move(rr));
    }
    for (const json& s : j.at("summary")) {
      SummaryRow row;
      row.method = s.at("method").get<std::string>();
      row.wavelet = s.at("wavelet").get<std::string>();
      row.count = s.at("count").get<int>();
      row.mean_delta_snr_db = number_from(s.at("mean_delta_snr_db"));
      row.std_delta_snr_db = number_from(s.at("std_delta_snr_db"));
      row.mean_eta_percent = number_from(s.at("mean_eta_percent"));
      row.std_eta_percent = number_from(s.at("std_eta_percent"));
      r.summary.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed JSON report: ") + e.what());
  }
  return r;
}

void write_report(const EvalReport& report, ReportFormat format, const std::filesystem::path& path) {
  if (report.records.empty()) throw std::invalid_argument("write_report: no results");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write report '" + path.string() + "'");
  out << render_report(report, format);
  if (!out) throw std::runtime_error("error writing report '" + path.string() + "'");
}

EvalReport read_json_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open report '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_report(buf.str());
}

}  // namespace wpdenoise
