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

#ifndef WPDENOISE_WPD_HPP_
#define WPDENOISE_WPD_HPP_

// Full wavelet packet analysis and synthesis with periodic extension.
//
// Nodes at every level are stored in natural (Paley) order: node 2p is the
// lowpass child of node p and 2p+1 its highpass child. Because decimating a
// highpass branch mirrors its spectrum, natural order is not frequency
// order; frequency_ranks() gives the mapping. Leaf 0 (lowpass at every
// level) is always the lowest-frequency approximation sub-band.

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

#include "wpdenoise/signal.hpp"
#include "wpdenoise/wavelet_filters.hpp"

namespace wpdenoise {

enum class Extension { kPeriodic };

template <typename Scalar>
struct WpdTree {
  int level = 0;
  // 2^level coefficient arrays, natural order, each padded_length / 2^level long.
  std::vector<VectorX<Scalar>> leaves;
  WaveletFilter<Scalar> filter;
  Eigen::Index original_length = 0;
  Eigen::Index padded_length = 0;
  double sample_rate = 0.0;
  Extension padding = Extension::kPeriodic;
};

// 2^level full-rate band-limited signals whose pointwise sum is the analyzed
// signal. components[i] is synthesized from leaf i (natural order).
template <typename Scalar>
struct SubbandSet {
  std::vector<VectorX<Scalar>> components;
  double sample_rate = 0.0;
  WaveletFilter<Scalar> filter;
  int level = 0;

  size_t size() const { return components.size(); }
};

namespace wpd_detail {

// One periodic two-channel analysis step: a[k] = sum_n h[n] x[(2k+n) mod N].
template <typename Scalar>
void analyze(const VectorX<Scalar>& x, const WaveletFilter<Scalar>& f, VectorX<Scalar>& approx,
             VectorX<Scalar>& detail) {
  const Eigen::Index n = x.size();
  const Eigen::Index half = n / 2;
  const Eigen::Index taps = f.length();
  approx.setZero(half);
  detail.setZero(half);
  for (Eigen::Index k = 0; k < half; ++k) {
    Scalar a = 0;
    Scalar d = 0;
    for (Eigen::Index t = 0; t < taps; ++t) {
      const Scalar v = x[(2 * k + t) % n];
      a += f.h[t] * v;
      d += f.g[t] * v;
    }
    approx[k] = a;
    detail[k] = d;
  }
}

// Adjoint of analyze(); an exact inverse because the filter pair is orthogonal.
// Either input may be null, meaning all zeros.
template <typename Scalar>
VectorX<Scalar> synthesize(const VectorX<Scalar>* approx, const VectorX<Scalar>* detail,
                           Eigen::Index half, const WaveletFilter<Scalar>& f) {
  const Eigen::Index n = 2 * half;
  const Eigen::Index taps = f.length();
  VectorX<Scalar> x = VectorX<Scalar>::Zero(n);
  for (Eigen::Index k = 0; k < half; ++k) {
    const Scalar a = approx ? (*approx)[k] : Scalar(0);
    const Scalar d = detail ? (*detail)[k] : Scalar(0);
    for (Eigen::Index t = 0; t < taps; ++t) {
      x[(2 * k + t) % n] += f.h[t] * a + f.g[t] * d;
    }
  }
  return x;
}

}  // namespace wpd_detail

// Frequency rank (0 = lowest band) of every natural-order node at `level`.
inline std::vector<int> frequency_ranks(int level) {
  std::vector<int> ranks{0};
  for (int l = 0; l < level; ++l) {
    std::vector<int> next(ranks.size() * 2);
    for (size_t p = 0; p < ranks.size(); ++p) {
      const int r = ranks[p];
      const bool mirrored = (r % 2) != 0;
      next[2 * p] = mirrored ? 2 * r + 1 : 2 * r;
      next[2 * p + 1] = mirrored ? 2 * r : 2 * r + 1;
    }
    ranks = std::move(next);
  }
  return ranks;
}

// Natural-order index of the node with the given frequency rank.
inline int natural_index_for_rank(int level, int rank) {
  const std::vector<int> ranks = frequency_ranks(level);
  for (size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] == rank) return static_cast<int>(i);
  }
  throw std::out_of_range("natural_index_for_rank: rank out of range");
}

// Natural index of the lowest-frequency approximation sub-band.
inline int approximation_index(int /*level*/) { return 0; }

// Figure-style label: the lowest band is "S<2^j-1>", the rest are "D1" (highest
// frequency) up to "D<2^j-1>".
inline std::string subband_label(int level, int natural_index) {
  const std::vector<int> ranks = frequency_ranks(level);
  if (natural_index < 0 || natural_index >= static_cast<int>(ranks.size())) {
    throw std::out_of_range("subband_label: index out of range");
  }
  const int count = static_cast<int>(ranks.size());
  const int rank = ranks[static_cast<size_t>(natural_index)];
  return rank == 0 ? "S" + std::to_string(count - 1) : "D" + std::to_string(count - rank);
}

// Nominal band [lo, hi) in Hz of a natural-order node.
inline std::pair<double, double> nominal_band(int level, int natural_index, double sample_rate) {
  const std::vector<int> ranks = frequency_ranks(level);
  const double width = sample_rate / 2.0 / static_cast<double>(ranks.size());
  const int rank = ranks.at(static_cast<size_t>(natural_index));
  return {rank * width, (rank + 1) * width};
}

template <typename Scalar>
WpdTree<Scalar> decompose(const BasicSignal<Scalar>& signal, const WaveletFilter<Scalar>& filter,
                          int level) {
  if (level < 1 || level > 20) {
    throw std::invalid_argument("decompose: level must be in [1, 20], got " + std::to_string(level));
  }
  validate(signal);
  const Eigen::Index n = signal.size();
  if (n < filter.length()) {
    throw std::invalid_argument("decompose: signal of " + std::to_string(n) +
                                " samples is shorter than the " + std::to_string(filter.length()) +
                                "-tap filter");
  }
  const Eigen::Index block = Eigen::Index(1) << level;
  const Eigen::Index padded = ((n + block - 1) / block) * block;

  VectorX<Scalar> x(padded);
  for (Eigen::Index i = 0; i < padded; ++i) x[i] = signal.samples[i % n];

  std::vector<VectorX<Scalar>> nodes{std::move(x)};
  for (int l = 0; l < level; ++l) {
    std::vector<VectorX<Scalar>> next(nodes.size() * 2);
    for (size_t p = 0; p < nodes.size(); ++p) {
      wpd_detail::analyze(nodes[p], filter, next[2 * p], next[2 * p + 1]);
    }
    nodes = std::move(next);
  }

  WpdTree<Scalar> tree;
  tree.level = level;
  tree.leaves = std::move(nodes);
  tree.filter = filter;
  tree.original_length = n;
  tree.padded_length = padded;
  tree.sample_rate = signal.sample_rate;
  return tree;
}

// Inverse transform of a full set of leaves, cropped to the original length.
template <typename Scalar>
VectorX<Scalar> synthesize(const WpdTree<Scalar>& tree) {
  std::vector<VectorX<Scalar>> nodes = tree.leaves;
  while (nodes.size() > 1) {
    std::vector<VectorX<Scalar>> up(nodes.size() / 2);
    for (size_t p = 0; p < up.size(); ++p) {
      up[p] = wpd_detail::synthesize(&nodes[2 * p], &nodes[2 * p + 1], nodes[2 * p].size(), tree.filter);
    }
    nodes = std::move(up);
  }
  return nodes.front().head(tree.original_length);
}

template <typename Scalar>
SubbandSet<Scalar> subband_components(const WpdTree<Scalar>& tree) {
  const size_t count = size_t(1) << tree.level;
  if (tree.leaves.size() != count) {
    throw std::invalid_argument("subband_components: tree has " + std::to_string(tree.leaves.size()) +
                                " leaves, expected " + std::to_string(count));
  }
  SubbandSet<Scalar> set;
  set.sample_rate = tree.sample_rate;
  set.filter = tree.filter;
  set.level = tree.level;
  set.components.reserve(count);
  for (size_t leaf = 0; leaf < count; ++leaf) {
    // Only the path from this leaf to the root is nonzero.
    VectorX<Scalar> node = tree.leaves[leaf];
    size_t index = leaf;
    for (int l = tree.level; l > 0; --l) {
      const bool high = (index % 2) != 0;
      node = high ? wpd_detail::synthesize<Scalar>(nullptr, &node, node.size(), tree.filter)
                  : wpd_detail::synthesize<Scalar>(&node, nullptr, node.size(), tree.filter);
      index /= 2;
    }
    set.components.push_back(node.head(tree.original_length));
  }
  return set;
}

// Pointwise sum of the components whose mask entry is true. An all-false mask
// yields the zero signal.
template <typename Scalar>
BasicSignal<Scalar> reconstruct(const SubbandSet<Scalar>& subbands, const std::vector<bool>& keep_mask) {
  if (keep_mask.size() != subbands.size()) {
    throw std::invalid_argument("reconstruct: mask has " + std::to_string(keep_mask.size()) +
                                " entries for " + std::to_string(subbands.size()) + " components");
  }
  if (subbands.components.empty()) {
    throw std::invalid_argument("reconstruct: empty sub-band set");
  }
  VectorX<Scalar> sum = VectorX<Scalar>::Zero(subbands.components.front().size());
  for (size_t i = 0; i < keep_mask.size(); ++i) {
    if (keep_mask[i]) sum += subbands.components[i];
  }
  return {std::move(sum), subbands.sample_rate};
}

}  // namespace wpdenoise

#endif  // WPDENOISE_WPD_HPP_
