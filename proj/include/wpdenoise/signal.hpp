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

#ifndef WPDENOISE_SIGNAL_HPP_
#define WPDENOISE_SIGNAL_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace wpdenoise {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// A uniformly sampled single-channel signal. Units depend on the modality
// (µV for EEG, optical density for fNIRS).
template <typename Scalar>
struct BasicSignal {
  VectorX<Scalar> samples;
  double sample_rate = 0.0;

  BasicSignal() = default;
  BasicSignal(VectorX<Scalar> s, double fs) : samples(std::move(s)), sample_rate(fs) {}

  Eigen::Index size() const { return samples.size(); }
};

using Signal = BasicSignal<double>;

// Throws std::invalid_argument unless the signal is nonempty, finite and has
// a positive sample rate. `what` names the signal in the message.
template <typename Scalar>
void validate(const BasicSignal<Scalar>& s, const std::string& what = "signal") {
  if (!(s.sample_rate > 0.0) || !std::isfinite(s.sample_rate)) {
    throw std::invalid_argument(what + ": sample rate must be positive");
  }
  if (s.samples.size() == 0) {
    throw std::invalid_argument(what + ": no samples");
  }
  for (Eigen::Index i = 0; i < s.samples.size(); ++i) {
    if (!std::isfinite(static_cast<double>(s.samples[i]))) {
      throw std::invalid_argument(what + ": non-finite sample at index " + std::to_string(i));
    }
  }
}

}  // namespace wpdenoise

#endif  // WPDENOISE_SIGNAL_HPP_
