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

#ifndef WPDENOISE_METRICS_HPP_
#define WPDENOISE_METRICS_HPP_

#include <stdexcept>

#include "wpdenoise/signal.hpp"

namespace wpdenoise {

// Raised when a metric is undefined for its inputs (constant signal,
// perfectly correlated baseline, zero residual).
class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// How the variances in the SNR change are read. kResidual compares
// Var(truth - corrupted) with Var(truth - cleaned); kRaw compares
// Var(corrupted) with Var(cleaned).
enum class SnrMode { kResidual, kRaw };

struct ScorePair {
  double delta_snr_db = 0.0;
  double eta_percent = 0.0;
  double rho_before = 0.0;
  double rho_after = 0.0;
};

// Sample Pearson correlation.
double pearson(const VectorX<double>& a, const VectorX<double>& b);
double pearson(const Signal& a, const Signal& b);

// Population variance (divides by n).
double variance(const VectorX<double>& v);

double delta_snr(const Signal& truth, const Signal& corrupted, const Signal& cleaned,
                 SnrMode mode = SnrMode::kResidual);

// Percentage artifact reduction from correlations with the ground truth:
// 100 * (1 - (rho_clean - rho_after) / (rho_clean - rho_before)).
double eta_from_correlations(double rho_before, double rho_after, double rho_clean = 1.0);

// rho_clean fixed at 1.
double eta(const Signal& truth, const Signal& corrupted, const Signal& cleaned);
double eta_general(const Signal& truth, const Signal& corrupted, const Signal& cleaned, double rho_clean);

// Both metrics at once. A cleaned signal identical to the corrupted one
// scores 0 dB and 0% without evaluating the (possibly undefined) ratios.
ScorePair score(const Signal& truth, const Signal& corrupted, const Signal& cleaned,
                SnrMode mode = SnrMode::kResidual);

}  // namespace wpdenoise

#endif  // WPDENOISE_METRICS_HPP_
