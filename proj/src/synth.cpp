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

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "wpdenoise/record.hpp"

namespace wpdenoise {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// mt19937_64 output is fully specified by the standard; the distributions
// in <random> are not, so draws are derived from raw bits here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct Tone {
  double hz_lo, hz_hi, amplitude;
};

VectorX<double> moving_average(const VectorX<double>& x, Eigen::Index width) {
  const Eigen::Index n = x.size();
  const Eigen::Index half = width / 2;
  VectorX<double> prefix(n + 1);
  prefix[0] = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
  VectorX<double> y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, i - half);
    const Eigen::Index hi = std::min<Eigen::Index>(n, i + half + 1);
    y[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return y;
}

// Sum of first-order lowpass noise processes with log-spaced corners and
// equal variance per octave; the sum has an approximately 1/f spectrum
// between the lowest and highest corner.
VectorX<double> pink_noise(Rng& rng, Eigen::Index n, double fs, double sigma, double lo_hz, double hi_hz) {
  VectorX<double> x = VectorX<double>::Zero(n);
  const int stages = std::max(1, static_cast<int>(std::ceil(std::log2(hi_hz / lo_hz) / 2.0)) + 1);
  for (int k = 0; k < stages; ++k) {
    const double corner = lo_hz * std::pow(4.0, k);
    const double pole = std::exp(-kTwoPi * corner / fs);
    // Stationary variance of each stage is sigma^2 / stages.
    const double drive = sigma * std::sqrt((1.0 - pole * pole) / stages);
    double state = 0.0;
    for (int warm = 0; warm < static_cast<int>(3.0 * fs / corner) + 1; ++warm) state = pole * state + drive * rng.normal();
    for (Eigen::Index i = 0; i < n; ++i) {
      state = pole * state + drive * rng.normal();
      x[i] += state;
    }
  }
  return x;
}

VectorX<double> clean_signal(Rng& rng, const SynthSpec& spec, Eigen::Index n) {
  const double fs = spec.sample_rate;
  std::vector<Tone> tones;
  VectorX<double> x;
  if (spec.modality == Modality::kEeg) {
    // 1/f background with alpha and beta rhythms (µV)
    x = pink_noise(rng, n, fs, 6.0, 0.5, std::min(64.0, fs / 4.0));
    tones = {{9.0, 11.0, 10.0}, {18.0, 24.0, 3.0}};
  } else {
    // Mayer wave, respiration, cardiac (optical density)
    x = pink_noise(rng, n, fs, 0.1, 0.05, std::min(4.0, fs / 4.0));
    tones = {{0.08, 0.12, 0.8}, {0.2, 0.3, 0.5}, {1.0, 1.3, 0.3}};
  }
  for (const Tone& tone : tones) {
    const double hz = tone.hz_lo + (tone.hz_hi - tone.hz_lo) * rng.uniform();
    const double phase = kTwoPi * rng.uniform();
    const double mod_hz = 0.02 + 0.06 * rng.uniform();
    const double mod_phase = kTwoPi * rng.uniform();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / fs;
      const double envelope = 1.0 + 0.3 * std::sin(kTwoPi * mod_hz * t + mod_phase);
      x[i] += tone.amplitude * envelope * std::sin(kTwoPi * hz * t + phase);
    }
  }
  return x;
}

// Smoothed random walk below ~1 Hz, pinned to zero at both ends and tapered.
VectorX<double> burst(Rng& rng, Eigen::Index len, double fs) {
  VectorX<double> walk(len);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < len; ++i) {
    acc += rng.normal();
    walk[i] = acc;
  }
  const auto width = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::lround(fs)));
  walk = moving_average(moving_average(walk, width), width);
  const double first = walk[0];
  const double last = walk[len - 1];
  for (Eigen::Index i = 0; i < len; ++i) {
    const double frac = len > 1 ? static_cast<double>(i) / static_cast<double>(len - 1) : 0.0;
    const double taper = 0.5 - 0.5 * std::cos(kTwoPi * frac);
    walk[i] = (walk[i] - (first + (last - first) * frac)) * taper;
  }
  return walk;
}

}  // namespace

SynthSpec SynthSpec::default_eeg() { return SynthSpec{}; }

SynthSpec SynthSpec::default_fnirs() {
  SynthSpec s;
  s.modality = Modality::kFnirs;
  s.sample_rate = 25.0;
  return s;
}

std::vector<ArtifactEpoch> SynthSpec::schedule() const {
  if (!epochs.empty()) return epochs;
  std::vector<ArtifactEpoch> out;
  if (!(interval_s > 0.0) || !(burst_s > 0.0)) return out;
  for (double onset = first_onset_s; onset + burst_s <= duration_s; onset += interval_s) {
    out.push_back({onset, burst_s});
  }
  return out;
}

Record synth_record(std::uint64_t seed, const SynthSpec& spec) {
  if (!(spec.sample_rate > 0.0) || !(spec.duration_s > 0.0)) {
    throw std::invalid_argument("synth: sample rate and duration must be positive");
  }
  if (!(spec.artifact_amp >= 0.0) || !std::isfinite(spec.artifact_amp)) {
    throw std::invalid_argument("synth: artifact amplitude must be a finite non-negative number");
  }
  const auto n = static_cast<Eigen::Index>(std::llround(spec.duration_s * spec.sample_rate));
  if (n < 16) throw std::invalid_argument("synth: record too short");
  const std::vector<ArtifactEpoch> epochs = spec.schedule();
  for (const ArtifactEpoch& e : epochs) {
    if (e.onset_s < 0.0 || !(e.duration_s > 0.0) || e.onset_s + e.duration_s > spec.duration_s) {
      throw std::invalid_argument("synth: artifact epoch exceeds the record duration");
    }
  }

  Rng rng(seed);
  Record rec;
  rec.id = spec.id.empty() ? "synth_" + std::to_string(seed) : spec.id;
  rec.modality = spec.modality;
  if (spec.modality == Modality::kFnirs) rec.wavelength_nm = 830;
  const VectorX<double> clean = clean_signal(rng, spec, n);
  const double clean_rms = std::sqrt(clean.squaredNorm() / static_cast<double>(n));

  VectorX<double> corrupted = clean;
  for (const ArtifactEpoch& e : epochs) {
    const auto begin = static_cast<Eigen::Index>(std::llround(e.onset_s * spec.sample_rate));
    const auto len = std::min<Eigen::Index>(n - begin, std::llround(e.duration_s * spec.sample_rate));
    if (len < 2) continue;
    VectorX<double> b = burst(rng, len, spec.sample_rate);
    if (spec.artifact_amp == 0.0) continue;
    const double rms = std::sqrt(b.squaredNorm() / static_cast<double>(len));
    if (rms > 0.0) b *= spec.artifact_amp * clean_rms / rms;
    corrupted.segment(begin, len) += b;
  }
  rec.corrupted = Signal(std::move(corrupted), spec.sample_rate);
  rec.reference = Signal(clean, spec.sample_rate);
  return rec;
}

}  // namespace wpdenoise
