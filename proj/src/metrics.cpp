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

#include "wpdenoise/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wpdenoise {
namespace {

constexpr double kVarianceFloor = 1e-30;
constexpr double kDegenerateCorrelation = 1e-12;

void require_same_length(const Signal& a, const Signal& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": length mismatch (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

}  // namespace

double pearson(const VectorX<double>& a, const VectorX<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("pearson: length mismatch (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  if (a.size() < 2) throw std::invalid_argument("pearson: need at least 2 samples");
  const VectorX<double> da = a.array() - a.mean();
  const VectorX<double> db = b.array() - b.mean();
  const double saa = da.squaredNorm();
  const double sbb = db.squaredNorm();
  if (saa == 0.0 || sbb == 0.0) throw MetricError("pearson: constant input has zero variance");
  const double r = da.dot(db) / std::sqrt(saa * sbb);
  return std::clamp(r, -1.0, 1.0);
}

double pearson(const Signal& a, const Signal& b) { return pearson(a.samples, b.samples); }

double variance(const VectorX<double>& v) {
  if (v.size() == 0) throw std::invalid_argument("variance: empty input");
  return (v.array() - v.mean()).square().sum() / static_cast<double>(v.size());
}

double delta_snr(const Signal& truth, const Signal& corrupted, const Signal& cleaned, SnrMode mode) {
  require_same_length(truth, corrupted, "delta_snr");
  require_same_length(truth, cleaned, "delta_snr");
  double before = 0.0;
  double after = 0.0;
  if (mode == SnrMode::kResidual) {
    before = variance(truth.samples - corrupted.samples);
    after = variance(truth.samples - cleaned.samples);
  } else {
    before = variance(corrupted.samples);
    after = variance(cleaned.samples);
  }
  if (after < kVarianceFloor) throw MetricError("delta_snr: perfect reconstruction, ΔSNR unbounded");
  if (before < kVarianceFloor) throw MetricError("delta_snr: corrupted signal has no error, ΔSNR undefined");
  const double signal = variance(truth.samples);
  return 10.0 * std::log10(signal / after) - 10.0 * std::log10(signal / before);
}

double eta_from_correlations(double rho_before, double rho_after, double rho_clean) {
  if (std::abs(rho_clean - rho_before) <= kDegenerateCorrelation) {
    throw MetricError("eta: rho_before equals rho_clean, reduction undefined");
  }
  return 100.0 * (1.0 - (rho_clean - rho_after) / (rho_clean - rho_before));
}

double eta(const Signal& truth, const Signal& corrupted, const Signal& cleaned) {
  return eta_general(truth, corrupted, cleaned, 1.0);
}

double eta_general(const Signal& truth, const Signal& corrupted, const Signal& cleaned, double rho_clean) {
  require_same_length(truth, corrupted, "eta");
  require_same_length(truth, cleaned, "eta");
  return eta_from_correlations(pearson(truth, corrupted), pearson(truth, cleaned), rho_clean);
}

ScorePair score(const Signal& truth, const Signal& corrupted, const Signal& cleaned, SnrMode mode) {
  ScorePair s;
  s.rho_before = pearson(truth, corrupted);
  if (cleaned.samples == corrupted.samples) {
    s.rho_after = s.rho_before;
    return s;
  }
  s.rho_after = pearson(truth, cleaned);
  s.delta_snr_db = delta_snr(truth, corrupted, cleaned, mode);
  s.eta_percent = eta_from_correlations(s.rho_before, s.rho_after);
  return s;
}

}  // namespace wpdenoise
