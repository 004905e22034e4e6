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

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

#include "wpdenoise/record.hpp"

namespace wpdenoise {
namespace {

constexpr std::string_view kColumnHeader = "corrupted,reference";

bool parse_number(std::string_view text, double& out) {
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  for (const char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(Modality m) { return m == Modality::kEeg ? "EEG" : "FNIRS"; }

Modality parse_modality(std::string_view text) {
  if (text == "EEG" || text == "eeg") return Modality::kEeg;
  if (text == "FNIRS" || text == "fnirs") return Modality::kFnirs;
  throw std::invalid_argument("unknown modality '" + std::string(text) + "' (expected EEG or FNIRS)");
}

ParseError::ParseError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

void Record::validate() const {
  if (!valid_id(id)) throw std::invalid_argument("record: invalid id '" + id + "'");
  wpdenoise::validate(corrupted, id + " corrupted");
  wpdenoise::validate(reference, id + " reference");
  if (corrupted.size() != reference.size()) {
    throw std::invalid_argument("record " + id + ": corrupted and reference lengths differ");
  }
  if (corrupted.sample_rate != reference.sample_rate) {
    throw std::invalid_argument("record " + id + ": corrupted and reference sample rates differ");
  }
  if (wavelength_nm && *wavelength_nm <= 0) {
    throw std::invalid_argument("record " + id + ": wavelength must be positive");
  }
}

void Dataset::validate() const {
  std::set<std::string> ids;
  for (const Record& r : records) {
    if (!ids.insert(r.id).second) throw std::invalid_argument("dataset: duplicate record id '" + r.id + "'");
  }
  for (const std::string& e : excluded_ids) {
    if (!ids.contains(e)) throw std::invalid_argument("dataset: excluded id '" + e + "' is not a record");
  }
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string format_record(const Record& record) {
  record.validate();
  std::string out;
  out.reserve(static_cast<size_t>(record.corrupted.size()) * 40 + 128);
  out += "# id=" + record.id + "\n";
  out += "# modality=" + std::string(to_string(record.modality)) + "\n";
  out += "# fs=" + format_double(record.corrupted.sample_rate) + "\n";
  if (record.wavelength_nm) out += "# wavelength_nm=" + std::to_string(*record.wavelength_nm) + "\n";
  out += kColumnHeader;
  out += '\n';
  for (Eigen::Index i = 0; i < record.corrupted.size(); ++i) {
    out += format_double(record.corrupted.samples[i]);
    out += ',';
    out += format_double(record.reference.samples[i]);
    out += '\n';
  }
  return out;
}

Record parse_record(std::string_view text, const std::string& source) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    const size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }

  std::map<std::string, std::string, std::less<>> header;
  size_t li = 0;
  for (; li < lines.size() && lines[li].starts_with("#"); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    std::string_view line = lines[li];
    if (!line.starts_with("# ")) throw ParseError(source, line_no, "header line must start with '# '");
    line.remove_prefix(2);
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "header line must be '# key=value'");
    const std::string key(line.substr(0, eq));
    const std::string value(line.substr(eq + 1));
    if (key != "id" && key != "modality" && key != "fs" && key != "wavelength_nm") {
      throw ParseError(source, line_no, "unknown header key '" + key + "'");
    }
    if (!header.emplace(key, value).second) throw ParseError(source, line_no, "duplicate header key '" + key + "'");
  }
  const int header_end = static_cast<int>(li);
  for (const char* key : {"id", "modality", "fs"}) {
    if (!header.contains(key)) throw ParseError(source, header_end + 1, std::string("missing header '") + key + "'");
  }

  Record rec;
  rec.id = header.at("id");
  if (!valid_id(rec.id)) throw ParseError(source, header_end, "invalid id '" + rec.id + "'");
  try {
    rec.modality = parse_modality(header.at("modality"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, header_end, e.what());
  }
  double fs = 0.0;
  if (!parse_number(header.at("fs"), fs) || fs <= 0.0) {
    throw ParseError(source, header_end, "invalid sample rate '" + header.at("fs") + "'");
  }
  if (const auto it = header.find("wavelength_nm"); it != header.end()) {
    int nm = 0;
    if (!parse_int(it->second, nm) || nm <= 0) {
      throw ParseError(source, header_end, "invalid wavelength '" + it->second + "'");
    }
    rec.wavelength_nm = nm;
  }

  if (li >= lines.size() || lines[li] != kColumnHeader) {
    throw ParseError(source, static_cast<int>(li) + 1, "expected column header '" + std::string(kColumnHeader) + "'");
  }
  ++li;

  std::vector<double> columns[2];
  const char* names[2] = {"corrupted", "reference"};
  int ended = -1;  // column that ran out first
  for (; li < lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    const std::string_view line = lines[li];
    const size_t comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(source, line_no, "expected exactly two comma-separated fields");
    }
    const std::string_view fields[2] = {line.substr(0, comma), line.substr(comma + 1)};
    for (int c = 0; c < 2; ++c) {
      if (fields[c].empty()) {
        if (fields[1 - c].empty()) throw ParseError(source, line_no, "empty row");
        if (ended >= 0 && ended != c) throw ParseError(source, line_no, "ragged columns");
        ended = c;
        continue;
      }
      if (ended == c) {
        throw ParseError(source, line_no, std::string("column '") + names[c] + "' resumes after ending");
      }
      double v = 0.0;
      if (!parse_number(fields[c], v)) {
        throw ParseError(source, line_no, "invalid or non-finite number '" + std::string(fields[c]) + "'");
      }
      columns[c].push_back(v);
    }
  }
  const int last_line = static_cast<int>(lines.size());
  if (ended >= 0) {
    throw ParseError(source, last_line,
                     std::string("column '") + names[ended] + "' is shorter (" +
                         std::to_string(columns[ended].size()) + " vs " + std::to_string(columns[1 - ended].size()) +
                         " samples)");
  }
  if (columns[0].empty()) throw ParseError(source, last_line, "no samples");

  const auto to_signal = [fs](const std::vector<double>& v) {
    return Signal(Eigen::Map<const VectorX<double>>(v.data(), static_cast<Eigen::Index>(v.size())), fs);
  };
  rec.corrupted = to_signal(columns[0]);
  rec.reference = to_signal(columns[1]);
  rec.validate();
  return rec;
}

Record read_record(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open record '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_record(buf.str(), path.string());
}

void write_record(const Record& record, const std::filesystem::path& path) {
  const std::string text = format_record(record);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write record '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("error writing record '" + path.string() + "'");
}

}  // namespace wpdenoise
