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

#include "wpdenoise/pipeline.hpp"

#include <stdexcept>

#include "wpdenoise/cca.hpp"
#include "wpdenoise/metrics.hpp"
#include "wpdenoise/wpd.hpp"

namespace wpdenoise {
namespace {

bool is_constant(const VectorX<double>& v) { return v.size() == 0 || (v.array() == v[0]).all(); }

void check_reference(const Signal& corrupted, const Signal& reference) {
  validate(reference, "reference");
  if (reference.size() != corrupted.size()) {
    throw std::invalid_argument("denoise: reference has " + std::to_string(reference.size()) +
                                " samples, corrupted has " + std::to_string(corrupted.size()));
  }
}

void finish(CleanResult& result, const Selection& selection) {
  result.selector_trace = selection.trace;
  for (size_t i = 0; i < selection.keep.size(); ++i) {
    if (!selection.keep[i]) result.removed_components.push_back(static_cast<int>(i));
  }
}

}  // namespace

void DenoiseConfig::validate() const {
  if (level < 1 || level > 10) throw std::invalid_argument("denoise: level must be in [1, 10]");
  if (method == Method::kWpdCca && wavelet.family() != Family::kDaubechies &&
      wavelet.family() != Family::kFejerKorovkin) {
    throw std::invalid_argument("denoise: WPD-CCA supports only db1-db3 and fk4-fk8, got " + wavelet.name());
  }
  if (selector == Selector::kBlindLowestApprox && method != Method::kWpdOnly) {
    throw std::invalid_argument("denoise: the blind selector is only available for WPD");
  }
}

std::string DenoiseConfig::name() const {
  return "WPD_" + wavelet.name() + (method == Method::kWpdCca ? "-CCA" : "");
}

DenoiseConfig DenoiseConfig::parse(std::string_view name, Selector selector) {
  constexpr std::string_view kPrefix = "WPD_";
  constexpr std::string_view kSuffix = "-CCA";
  if (!name.starts_with(kPrefix)) throw std::invalid_argument("unknown method '" + std::string(name) + "'");
  std::string_view rest = name.substr(kPrefix.size());
  DenoiseConfig cfg;
  cfg.selector = selector;
  if (rest.ends_with(kSuffix)) {
    cfg.method = Method::kWpdCca;
    rest.remove_suffix(kSuffix.size());
  }
  cfg.wavelet = WaveletFamily::parse(rest);
  cfg.validate();
  return cfg;
}

Selection select_greedy_oracle(size_t component_count, const CombineFn& combine, const Signal& reference,
                               double tie_epsilon) {
  Selection sel;
  sel.keep.assign(component_count, true);
  double current = pearson(combine(sel.keep), reference.samples);
  for (;;) {
    int best = -1;
    double best_rho = current;
    for (size_t i = 0; i < component_count; ++i) {
      if (!sel.keep[i]) continue;
      sel.keep[i] = false;
      const VectorX<double> rebuilt = combine(sel.keep);
      sel.keep[i] = true;
      if (is_constant(rebuilt)) continue;
      const double rho = pearson(rebuilt, reference.samples);
      if (rho > best_rho) {
        best = static_cast<int>(i);
        best_rho = rho;
      }
    }
    if (best < 0 || best_rho - current <= tie_epsilon) break;
    sel.keep[static_cast<size_t>(best)] = false;
    sel.trace.push_back({best, best_rho});
    current = best_rho;
  }
  return sel;
}

Selection select_greedy_oracle(const std::vector<VectorX<double>>& components, const Signal& reference,
                               double tie_epsilon) {
  if (components.empty()) throw std::invalid_argument("select_greedy_oracle: no components");
  const Eigen::Index n = components.front().size();
  return select_greedy_oracle(
      components.size(),
      [&](const std::vector<bool>& keep) {
        VectorX<double> sum = VectorX<double>::Zero(n);
        for (size_t i = 0; i < keep.size(); ++i) {
          if (keep[i]) sum += components[i];
        }
        return sum;
      },
      reference, tie_epsilon);
}

CleanResult denoise_wpd(const Signal& corrupted, const std::optional<Signal>& reference, const DenoiseConfig& cfg) {
  cfg.validate();
  if (cfg.method != Method::kWpdOnly) throw std::invalid_argument("denoise_wpd: config is not a WPD method");
  validate(corrupted, "corrupted");
  if (cfg.selector == Selector::kOracleGreedy && !reference) {
    throw std::invalid_argument("denoise_wpd: the oracle selector needs a ground-truth reference");
  }
  if (reference) check_reference(corrupted, *reference);

  const SubbandSet<double> subbands = subband_components(decompose(corrupted, filter_for(cfg.wavelet), cfg.level));
  Selection selection;
  if (cfg.selector == Selector::kOracleGreedy) {
    selection = select_greedy_oracle(subbands.components, *reference);
  } else {
    selection.keep.assign(subbands.size(), true);
    selection.keep[static_cast<size_t>(approximation_index(cfg.level))] = false;
  }

  CleanResult result;
  finish(result, selection);
  result.cleaned = result.removed_components.empty() ? corrupted : reconstruct(subbands, selection.keep);
  for (const int i : result.removed_components) result.removed_labels.push_back(subband_label(cfg.level, i));
  return result;
}

CleanResult denoise_wpd_cca(const Signal& corrupted, const Signal& reference, const DenoiseConfig& cfg) {
  cfg.validate();
  if (cfg.method != Method::kWpdCca) throw std::invalid_argument("denoise_wpd_cca: config is not a WPD-CCA method");
  if (cfg.selector != Selector::kOracleGreedy) {
    throw std::invalid_argument("denoise_wpd_cca: only the oracle selector is available");
  }
  validate(corrupted, "corrupted");
  check_reference(corrupted, reference);

  const SubbandSet<double> subbands = subband_components(decompose(corrupted, filter_for(cfg.wavelet), cfg.level));
  cca::MultiChannel<double> channels{MatrixX<double>(subbands.size(), corrupted.size()), corrupted.sample_rate};
  for (size_t i = 0; i < subbands.size(); ++i) channels.channels.row(static_cast<Eigen::Index>(i)) = subbands.components[i].transpose();

  const cca::CcaModel<double> model = cca::fit(channels);
  const cca::SourceSet<double> src = cca::sources(model, channels);

  // Summing the reconstructed channels is linear in the kept sources, so
  // each source contributes its row scaled by the column sum of W^-1. The
  // channel means only add a constant, which does not move the correlation.
  const VectorX<double> weights = model.mixing.colwise().sum().transpose();
  std::vector<VectorX<double>> contributions;
  contributions.reserve(static_cast<size_t>(src.count()));
  for (Eigen::Index k = 0; k < src.count(); ++k) {
    contributions.emplace_back(weights[k] * src.sources.row(k).transpose());
  }
  const Selection selection = select_greedy_oracle(contributions, reference);

  CleanResult result;
  finish(result, selection);
  if (result.removed_components.empty()) {
    result.cleaned = corrupted;
  } else {
    const cca::MultiChannel<double> rebuilt = cca::reconstruct(model, src, selection.keep);
    result.cleaned = Signal(rebuilt.channels.colwise().sum().transpose(), corrupted.sample_rate);
  }
  for (const int i : result.removed_components) result.removed_labels.push_back("CCA" + std::to_string(i + 1));
  return result;
}

CleanResult denoise(const Signal& corrupted, const std::optional<Signal>& reference, const DenoiseConfig& cfg) {
  if (cfg.method == Method::kWpdOnly) return denoise_wpd(corrupted, reference, cfg);
  if (!reference) throw std::invalid_argument("denoise: WPD-CCA needs a ground-truth reference");
  return denoise_wpd_cca(corrupted, *reference, cfg);
}

}  // namespace wpdenoise
