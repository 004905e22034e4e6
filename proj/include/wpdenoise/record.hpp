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

#ifndef WPDENOISE_RECORD_HPP_
#define WPDENOISE_RECORD_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wpdenoise/signal.hpp"

namespace wpdenoise {

enum class Modality { kEeg, kFnirs };

std::string_view to_string(Modality m);
Modality parse_modality(std::string_view text);

// A motion-corrupted channel paired with its simultaneously recorded
// artifact-free neighbour.
struct Record {
  std::string id;
  Modality modality = Modality::kEeg;
  Signal corrupted;
  Signal reference;
  std::optional<int> wavelength_nm;

  void validate() const;
};

struct Dataset {
  std::vector<Record> records;
  std::vector<std::string> excluded_ids;

  void validate() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Record text format:
//
//   # id=eeg_03
//   # modality=EEG
//   # fs=256
//   # wavelength_nm=830        (optional)
//   corrupted,reference
//   <value>,<value>
//   ...
//
// Values are written in shortest round-trip decimal form, so a write/read
// cycle is bit-exact.
std::string format_record(const Record& record);
Record parse_record(std::string_view text, const std::string& source = "<memory>");

Record read_record(const std::filesystem::path& path);
void write_record(const Record& record, const std::filesystem::path& path);

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

// Low-frequency motion bursts added to the reference.
struct ArtifactEpoch {
  double onset_s = 0.0;
  double duration_s = 0.0;
};

struct SynthSpec {
  std::string id;  // empty: "synth_<seed>"
  Modality modality = Modality::kEeg;
  double sample_rate = 256.0;
  double duration_s = 540.0;
  double first_onset_s = 30.0;
  double interval_s = 120.0;
  double burst_s = 15.0;
  // Burst RMS relative to the clean signal's RMS.
  double artifact_amp = 3.0;
  // Overrides the periodic schedule when nonempty.
  std::vector<ArtifactEpoch> epochs;

  static SynthSpec default_eeg();
  static SynthSpec default_fnirs();
  std::vector<ArtifactEpoch> schedule() const;
};

// Deterministic in (seed, spec) on every platform.
Record synth_record(std::uint64_t seed, const SynthSpec& spec);

}  // namespace wpdenoise

#endif  // WPDENOISE_RECORD_HPP_
