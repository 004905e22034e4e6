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


#include "wpdenoise/record.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "test_util.hpp"
#include "wpdenoise/metrics.hpp"

namespace wpdenoise {
namespace {

using testing::gaussian;

Record small_record() {
  Record r;
  r.id = "eeg_03";
  r.modality = Modality::kEeg;
  r.corrupted = Signal{VectorX<double>{{1.5, -2.25, 3.0}}, 256.0};
  r.reference = Signal{VectorX<double>{{1.0, -2.0, 2.5}}, 256.0};
  return r;
}

const char* kSmall =
    "# id=eeg_03\n"
    "# modality=EEG\n"
    "# fs=256\n"
    "corrupted,reference\n"
    "1.5,1\n"
    "-2.25,-2\n"
    "3,2.5\n";

TEST(Record, FormatsCanonically) { EXPECT_EQ(format_record(small_record()), kSmall); }

TEST(Record, ParsesThreeSamples) {
  const Record r = parse_record(kSmall);
  EXPECT_EQ(r.id, "eeg_03");
  EXPECT_EQ(r.modality, Modality::kEeg);
  EXPECT_EQ(r.corrupted.size(), 3);
  EXPECT_EQ(r.corrupted.sample_rate, 256.0);
  EXPECT_EQ(r.reference.samples, small_record().reference.samples);
  EXPECT_FALSE(r.wavelength_nm.has_value());
}

TEST(Record, FileRoundTripIsBitExact) {
  Record r;
  r.id = "fnirs_07";
  r.modality = Modality::kFnirs;
  r.wavelength_nm = 690;
  r.corrupted = Signal{gaussian(1000, 1) * 1e-3, 25.0};
  r.reference = Signal{gaussian(1000, 2) * 1e5, 25.0};
  r.corrupted.samples[3] = 5e-324;
  r.reference.samples[4] = -1.7976931348623157e308;
  const auto path = std::filesystem::temp_directory_path() / ("wpdenoise_record_io_" + std::to_string(::getpid()) + ".csv");
  write_record(r, path);
  const Record back = read_record(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.id, r.id);
  EXPECT_EQ(back.modality, r.modality);
  EXPECT_EQ(back.wavelength_nm, r.wavelength_nm);
  EXPECT_EQ(back.corrupted.sample_rate, 25.0);
  EXPECT_EQ(back.corrupted.samples, r.corrupted.samples);
  EXPECT_EQ(back.reference.samples, r.reference.samples);
}

TEST(Record, MissingFile) {
  EXPECT_THROW(read_record("/nonexistent/wpdenoise/none.csv"), std::runtime_error);
}

TEST(Record, ShorterColumnIsNamed) {
  const std::string text = std::string(kSmall) + "4,\n";
  try {
    parse_record(text, "x.csv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("reference"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("x.csv"), std::string::npos) << e.what();
  }
  try {
    parse_record(std::string(kSmall) + ",4\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("corrupted"), std::string::npos) << e.what();
  }
}

TEST(Record, RejectsMalformed) {
  const std::string base = kSmall;
  const auto replace = [&](const std::string& from, const std::string& to) {
    std::string s = base;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  for (const std::string& bad : {
           replace("# fs=256", "# fs=abc"),
           replace("# fs=256", "# fs=-1"),
           replace("# fs=256\n", ""),
           replace("# modality=EEG", "# modality=MEG"),
           replace("# id=eeg_03", "# id=eeg_03\n# id=eeg_04"),
           replace("# id=eeg_03", "# colour=blue"),
           replace("corrupted,reference", "reference,corrupted"),
           replace("1.5,1", "1.5,nan"),
           replace("1.5,1", "1.5,inf"),
           replace("1.5,1", "1.5,1,2"),
           replace("1.5,1", "1.5x,1"),
           replace("1.5,1", " 1.5,1"),
           replace("1.5,1\n", "1.5,1\r\n"),
           replace("-2.25,-2\n", "\n"),
           replace("-2.25,-2\n", "-2.25,-2\n,\n"),
           std::string("# id=a\n# modality=EEG\n# fs=1\ncorrupted,reference\n"),
       }) {
    EXPECT_THROW(parse_record(bad), ParseError) << bad;
  }
}

// Independent reading of the data rows: every field must be consumed whole
// by strtod and be finite.
bool oracle_rows(const std::string& text, std::vector<double>& a, std::vector<double>& b) {
  std::istringstream in(text);
  std::string line;
  bool data = false;
  while (std::getline(in, line)) {
    if (!data) {
      data = line == "corrupted,reference";
      continue;
    }
    const size_t comma = line.find(',');
    if (comma == std::string::npos) return false;
    const std::string f[2] = {line.substr(0, comma), line.substr(comma + 1)};
    for (int c = 0; c < 2; ++c) {
      if (f[c].empty() || std::isspace(static_cast<unsigned char>(f[c][0]))) return false;
      char* end = nullptr;
      const double v = std::strtod(f[c].c_str(), &end);
      if (*end != '\0' || !std::isfinite(v)) return false;
      (c == 0 ? a : b).push_back(v);
    }
  }
  return data;
}

TEST(Record, FuzzedMutationsAreNeverCoerced) {
  Record r;
  r.id = "eeg_01";
  r.corrupted = Signal{gaussian(20, 1), 256.0};
  r.reference = Signal{gaussian(20, 2), 256.0};
  const std::string good = format_record(r);
  std::mt19937_64 rng(2024);
  const std::string alphabet = "0123456789.,-+eE#=\n\r xabnfi";
  int accepted = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    std::string s = good;
    const size_t pos = rng() % s.size();
    switch (rng() % 3) {
      case 0:
        s[pos] = alphabet[rng() % alphabet.size()];
        break;
      case 1:
        s.erase(pos, 1);
        break;
      default:
        s.insert(pos, 1, alphabet[rng() % alphabet.size()]);
        break;
    }
    Record got;
    try {
      got = parse_record(s);
    } catch (const ParseError&) {
      continue;
    } catch (const std::invalid_argument&) {
      continue;
    }
    ++accepted;
    std::vector<double> a;
    std::vector<double> b;
    ASSERT_TRUE(oracle_rows(s, a, b)) << s;
    ASSERT_EQ(got.corrupted.size(), static_cast<Eigen::Index>(a.size())) << s;
    ASSERT_EQ(got.reference.size(), static_cast<Eigen::Index>(b.size())) << s;
    for (size_t i = 0; i < a.size(); ++i) {
      ASSERT_EQ(got.corrupted.samples[static_cast<Eigen::Index>(i)], a[i]) << s;
      ASSERT_EQ(got.reference.samples[static_cast<Eigen::Index>(i)], b[i]) << s;
    }
  }
  EXPECT_GT(accepted, 0);
}

TEST(Dataset, Invariants) {
  Dataset d;
  d.records = {small_record(), small_record()};
  EXPECT_THROW(d.validate(), std::invalid_argument);
  d.records[1].id = "eeg_04";
  d.excluded_ids = {"eeg_04"};
  EXPECT_NO_THROW(d.validate());
  d.excluded_ids = {"eeg_12"};
  EXPECT_THROW(d.validate(), std::invalid_argument);
}

TEST(Record, Invariants) {
  Record r = small_record();
  r.reference.sample_rate = 128.0;
  EXPECT_THROW(r.validate(), std::invalid_argument);
  r = small_record();
  r.reference.samples.conservativeResize(2);
  EXPECT_THROW(r.validate(), std::invalid_argument);
}

TEST(Synth, Deterministic) {
  SynthSpec spec = SynthSpec::default_eeg();
  spec.duration_s = 200.0;
  const Record a = synth_record(42, spec);
  const Record b = synth_record(42, spec);
  EXPECT_EQ(a.corrupted.samples, b.corrupted.samples);
  EXPECT_EQ(a.reference.samples, b.reference.samples);
  EXPECT_EQ(a.id, "synth_42");
  EXPECT_NE(synth_record(43, spec).corrupted.samples, a.corrupted.samples);
}

TEST(Synth, DefaultEegIsCorrupted) {
  const SynthSpec spec = SynthSpec::default_eeg();
  EXPECT_EQ(spec.sample_rate, 256.0);
  EXPECT_EQ(spec.duration_s, 540.0);
  const std::vector<ArtifactEpoch> epochs = spec.schedule();
  ASSERT_EQ(epochs.size(), 5u);
  for (size_t i = 0; i < epochs.size(); ++i) {
    EXPECT_EQ(epochs[i].onset_s, 30.0 + 120.0 * static_cast<double>(i));
    EXPECT_GE(epochs[i].duration_s, 10.0);
    EXPECT_LE(epochs[i].duration_s, 25.0);
  }
  const Record r = synth_record(1, spec);
  EXPECT_EQ(r.corrupted.size(), 540 * 256);
  EXPECT_LT(pearson(r.corrupted, r.reference), 0.9);
  // Outside the bursts the pair is identical.
  EXPECT_EQ(r.corrupted.samples.head(29 * 256), r.reference.samples.head(29 * 256));
}

TEST(Synth, ZeroAmplitudeIsClean) {
  SynthSpec spec = SynthSpec::default_eeg();
  spec.artifact_amp = 0.0;
  spec.duration_s = 100.0;
  const Record r = synth_record(3, spec);
  EXPECT_EQ(r.corrupted.samples, r.reference.samples);
  EXPECT_EQ(pearson(r.corrupted, r.reference), 1.0);
}

TEST(Synth, Fnirs) {
  const Record r = synth_record(9, SynthSpec::default_fnirs());
  EXPECT_EQ(r.modality, Modality::kFnirs);
  EXPECT_EQ(r.corrupted.sample_rate, 25.0);
  EXPECT_TRUE(r.wavelength_nm.has_value());
}

TEST(Synth, EpochBeyondDurationRejected) {
  SynthSpec spec = SynthSpec::default_eeg();
  spec.duration_s = 60.0;
  spec.epochs = {{50.0, 15.0}};
  EXPECT_THROW(synth_record(1, spec), std::invalid_argument);
}

}  // namespace
}  // namespace wpdenoise
