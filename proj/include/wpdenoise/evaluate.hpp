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

#ifndef WPDENOISE_EVALUATE_HPP_
#define WPDENOISE_EVALUATE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wpdenoise/metrics.hpp"
#include "wpdenoise/pipeline.hpp"
#include "wpdenoise/preprocess.hpp"
#include "wpdenoise/record.hpp"
#include "wpdenoise/report.hpp"

namespace wpdenoise {

// kFull23: every EEG record. kTable2: EEG records minus the faulty trials,
// blind WPD selection. kFnirs16: every fNIRS record. kSynthetic: generated
// EEG records, no dataset needed.
enum class Protocol { kFull23, kTable2, kFnirs16, kSynthetic };

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view text);

struct RunPlan {
  std::filesystem::path dataset_dir;
  std::vector<DenoiseConfig> methods;
  // decimation_factor is ignored here; see decimation_override.
  PreprocessConfig preprocess;
  // 0: EEG records are brought to 256 Hz, fNIRS records are left alone.
  int decimation_override = 0;
  Protocol protocol = Protocol::kSynthetic;
  std::filesystem::path output_dir;
  int workers = 1;
  SnrMode snr_mode = SnrMode::kResidual;
  // Table 2 excludes these when empty: eeg_12, eeg_15.
  std::vector<std::string> excluded_ids;
  // Synthetic protocol.
  std::uint64_t seed = 1;
  int synthetic_records = 10;
  SynthSpec synth = SynthSpec::default_eeg();

  void validate() const;
  std::vector<std::string> exclusions() const;
};

// The 18 method configurations (12 WPD, 6 WPD-CCA), oracle selection.
std::vector<DenoiseConfig> all_methods();

// Every *.csv record under `dir`, sorted by file name. Files that fail to
// parse are reported through `failures` as (file stem, message).
std::vector<Record> load_dataset(const std::filesystem::path& dir,
                                 std::vector<std::pair<std::string, std::string>>* failures = nullptr);

// Decimation factor applied to `record` under `plan`.
int decimation_for(const Record& record, const RunPlan& plan);

// Preprocess, denoise, score one record with one method.
RecordResult evaluate_one(const Record& record, const DenoiseConfig& method, const RunPlan& plan);

// Runs every (record, method) pair. Rows are ordered by record id, then
// method name, independent of the worker count. Per-record failures become
// rows with a non-"ok" status.
EvalReport cmd_evaluate(const RunPlan& plan);

}  // namespace wpdenoise

#endif  // WPDENOISE_EVALUATE_HPP_
