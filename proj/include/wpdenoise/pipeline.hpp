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

#ifndef WPDENOISE_PIPELINE_HPP_
#define WPDENOISE_PIPELINE_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wpdenoise/signal.hpp"
#include "wpdenoise/wavelet_filters.hpp"

namespace wpdenoise {

enum class Method { kWpdOnly, kWpdCca };

// kOracleGreedy drops components while doing so raises the correlation with
// the ground truth. kBlindLowestApprox always drops the lowest-frequency
// approximation sub-band and needs no ground truth (WPD only).
enum class Selector { kOracleGreedy, kBlindLowestApprox };

struct DenoiseConfig {
  Method method = Method::kWpdOnly;
  WaveletFamily wavelet = WaveletFamily::make(Family::kDaubechies, 1);
  int level = 4;
  Selector selector = Selector::kOracleGreedy;

  void validate() const;
  // "WPD_db1" or "WPD_db1-CCA".
  std::string name() const;
  // Inverse of name(); the selector is not part of the name.
  static DenoiseConfig parse(std::string_view name, Selector selector = Selector::kOracleGreedy);
};

struct SelectionStep {
  int component = 0;
  double rho_after = 0.0;
};

struct Selection {
  std::vector<bool> keep;
  std::vector<SelectionStep> trace;
};

struct CleanResult {
  Signal cleaned;
  // Sub-band indices (natural order) for WPD, source indices (descending
  // canonical correlation) for WPD-CCA.
  std::vector<int> removed_components;
  std::vector<SelectionStep> selector_trace;
  // "S15"/"D3" style for sub-bands, "CCA3" style for sources.
  std::vector<std::string> removed_labels;
};

inline constexpr double kGreedyTieEpsilon = 1e-12;

using CombineFn = std::function<VectorX<double>(const std::vector<bool>&)>;

// Best-improvement greedy removal. Each round tries dropping every still-kept
// component, rebuilding with `combine`, and accepts the drop that raises the
// Pearson correlation with `reference` the most, provided the gain exceeds
// tie_epsilon. Ties go to the lowest index.
Selection select_greedy_oracle(size_t component_count, const CombineFn& combine, const Signal& reference,
                               double tie_epsilon = kGreedyTieEpsilon);

// Same, with the rebuilt signal being the plain sum of kept components.
Selection select_greedy_oracle(const std::vector<VectorX<double>>& components, const Signal& reference,
                               double tie_epsilon = kGreedyTieEpsilon);

CleanResult denoise_wpd(const Signal& corrupted, const std::optional<Signal>& reference, const DenoiseConfig& cfg);
CleanResult denoise_wpd_cca(const Signal& corrupted, const Signal& reference, const DenoiseConfig& cfg);

// Dispatches on cfg.method.
CleanResult denoise(const Signal& corrupted, const std::optional<Signal>& reference, const DenoiseConfig& cfg);

}  // namespace wpdenoise

#endif  // WPDENOISE_PIPELINE_HPP_
