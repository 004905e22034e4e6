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

#ifndef WPDENOISE_WAVELET_FILTERS_HPP_
#define WPDENOISE_WAVELET_FILTERS_HPP_

#include <Eigen/Dense>

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wpdenoise/signal.hpp"

namespace wpdenoise {

enum class Family { kDaubechies, kSymlet, kCoiflet, kFejerKorovkin };

// One of the twelve supported orthogonal wavelet packets. Construct through
// make() or parse(); both reject unsupported (family, order) pairs.
class WaveletFamily {
 public:
  static WaveletFamily make(Family family, int order);
  // Accepts "db1" ... "fk8".
  static WaveletFamily parse(std::string_view name);
  static const std::vector<WaveletFamily>& all();

  Family family() const { return family_; }
  int order() const { return order_; }
  std::string name() const;
  // Number of filter taps.
  int length() const;

  friend bool operator==(const WaveletFamily&, const WaveletFamily&) = default;

 private:
  WaveletFamily(Family family, int order) : family_(family), order_(order) {}

  Family family_;
  int order_;
};

// Orthogonal two-channel analysis pair. h is the lowpass (scaling) filter
// normalized to sum sqrt(2); g is its quadrature mirror. h[0] is applied to
// the earliest sample of each analysis window.
template <typename Scalar>
struct WaveletFilter {
  VectorX<Scalar> h;
  VectorX<Scalar> g;
  WaveletFamily family = WaveletFamily::make(Family::kDaubechies, 1);

  Eigen::Index length() const { return h.size(); }

  template <typename Other>
  WaveletFilter<Other> cast() const {
    return {h.template cast<Other>(), g.template cast<Other>(), family};
  }
};

// g[k] = (-1)^k h[L-1-k]. Throws std::invalid_argument for empty or
// odd-length input.
template <typename Scalar>
VectorX<Scalar> highpass_from_lowpass(const VectorX<Scalar>& h) {
  const Eigen::Index len = h.size();
  if (len == 0 || len % 2 != 0) {
    throw std::invalid_argument("highpass_from_lowpass: filter length must be even and nonzero, got " +
                                std::to_string(len));
  }
  VectorX<Scalar> g(len);
  for (Eigen::Index k = 0; k < len; ++k) {
    const Scalar v = h[len - 1 - k];
    g[k] = (k % 2 == 0) ? v : Scalar(-v);
  }
  return g;
}

// Coefficients are compiled-in constants.
WaveletFilter<double> filter_for(const WaveletFamily& family);

}  // namespace wpdenoise

#endif  // WPDENOISE_WAVELET_FILTERS_HPP_
