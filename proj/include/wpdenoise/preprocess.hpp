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

#ifndef WPDENOISE_PREPROCESS_HPP_
#define WPDENOISE_PREPROCESS_HPP_

#include <vector>

#include "wpdenoise/signal.hpp"

namespace wpdenoise {

struct PreprocessConfig {
  int decimation_factor = 1;
  double notch_base_hz = 50.0;
  int notch_order = 3;
  // Each stop band spans center +/- this many Hz.
  double notch_half_width_hz = 1.0;
  int baseline_poly_order = 5;
  bool zero_phase = true;

  void validate() const;
};

// Second-order section, a0 == 1.
struct Biquad {
  double b0, b1, b2;
  double a1, a2;
};

// Linear-phase Hamming-windowed sinc lowpass with 8 * factor + 1 taps,
// cutoff at 0.8 of the decimated Nyquist, unit DC gain.
VectorX<double> antialias_fir(int factor);

// Anti-aliased integer downsampling. Keeps samples 0, factor, 2 factor, ...
// so the output has ceil(n / factor) samples. factor == 1 returns the input
// unchanged.
Signal decimate(const Signal& signal, int factor);

// Digital Butterworth band-stop of the given analog prototype order, designed
// by bilinear transform with prewarped band edges. Returns `order` sections
// each normalized to unit DC gain.
std::vector<Biquad> butterworth_bandstop(double low_hz, double high_hz, int order, double sample_rate);

// Causal cascade with steady-state initial conditions for the first sample.
VectorX<double> sosfilt(const std::vector<Biquad>& sections, const VectorX<double>& x);

// Forward-backward application on an odd-reflected extension of the input.
VectorX<double> sosfiltfilt(const std::vector<Biquad>& sections, const VectorX<double>& x, Eigen::Index padlen);

// Removes base_hz and every harmonic below Nyquist with cascaded band-stop
// filters. Returns the input unchanged (and logs) when no harmonic fits.
Signal notch(const Signal& signal, double base_hz, int order, bool zero_phase = true,
             double half_width_hz = 1.0);

// Subtracts the least-squares polynomial of the given degree, fitted over the
// sample index mapped to [-1, 1].
Signal detrend_poly(const Signal& signal, int order);

// decimate -> notch -> detrend_poly
Signal preprocess(const Signal& signal, const PreprocessConfig& config);

}  // namespace wpdenoise

#endif  // WPDENOISE_PREPROCESS_HPP_
