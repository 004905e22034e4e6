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

#include "wpdenoise/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wpdenoise/log.hpp"

namespace wpdenoise {
namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x); }

// Index into x with point-symmetric (odd) extension about both ends,
// x[-i] = 2 x[0] - x[i], which keeps value and slope continuous. Reflections
// reaching past the far end are clamped.
double odd_extended(const VectorX<double>& x, Eigen::Index i) {
  const Eigen::Index n = x.size();
  if (i >= 0 && i < n) return x[i];
  if (i < 0) return 2.0 * x[0] - x[std::min(-i, n - 1)];
  return 2.0 * x[n - 1] - x[std::max<Eigen::Index>(2 * (n - 1) - i, 0)];
}

Biquad section_from_poles(Complex pole, double zero_angle) {
  Biquad s{1.0, -2.0 * std::cos(zero_angle), 1.0, -2.0 * pole.real(), std::norm(pole)};
  const double dc = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
  s.b0 /= dc;
  s.b1 /= dc;
  s.b2 /= dc;
  return s;
}

}  // namespace

void PreprocessConfig::validate() const {
  if (decimation_factor < 1) throw std::invalid_argument("preprocess: decimation factor must be >= 1");
  if (!(notch_base_hz > 0.0)) throw std::invalid_argument("preprocess: notch base frequency must be > 0");
  if (notch_order < 1) throw std::invalid_argument("preprocess: notch order must be >= 1");
  if (!(notch_half_width_hz > 0.0)) throw std::invalid_argument("preprocess: notch half width must be > 0");
  if (baseline_poly_order < 0) throw std::invalid_argument("preprocess: polynomial order must be >= 0");
}

VectorX<double> antialias_fir(int factor) {
  if (factor < 1) throw std::invalid_argument("antialias_fir: factor must be >= 1");
  const int taps = 8 * factor + 1;
  const int mid = taps / 2;
  // 0.8 * (fs / factor / 2), in cycles per input sample.
  const double cutoff = 0.4 / factor;
  VectorX<double> h(taps);
  for (int k = 0; k < taps; ++k) {
    const double window = 0.54 - 0.46 * std::cos(2.0 * kPi * k / (taps - 1));
    h[k] = 2.0 * cutoff * sinc(2.0 * cutoff * (k - mid)) * window;
  }
  return h / h.sum();
}

Signal decimate(const Signal& signal, int factor) {
  if (factor < 1) throw std::invalid_argument("decimate: factor must be >= 1, got " + std::to_string(factor));
  validate(signal);
  if (factor == 1) return signal;

  const VectorX<double> h = antialias_fir(factor);
  const Eigen::Index mid = h.size() / 2;
  const Eigen::Index n = signal.size();
  const Eigen::Index out_len = (n + factor - 1) / factor;
  VectorX<double> out(out_len);
  for (Eigen::Index o = 0; o < out_len; ++o) {
    const Eigen::Index center = o * factor;
    double acc = 0.0;
    for (Eigen::Index k = 0; k < h.size(); ++k) {
      acc += h[k] * odd_extended(signal.samples, center + k - mid);
    }
    out[o] = acc;
  }
  return {std::move(out), signal.sample_rate / factor};
}

std::vector<Biquad> butterworth_bandstop(double low_hz, double high_hz, int order, double sample_rate) {
  const double nyquist = sample_rate / 2.0;
  if (order < 1) throw std::invalid_argument("butterworth_bandstop: order must be >= 1");
  if (!(0.0 < low_hz && low_hz < high_hz && high_hz < nyquist)) {
    throw std::invalid_argument("butterworth_bandstop: need 0 < low < high < Nyquist");
  }
  const double fs2 = 2.0 * sample_rate;
  const double w1 = fs2 * std::tan(kPi * low_hz / sample_rate);
  const double w2 = fs2 * std::tan(kPi * high_hz / sample_rate);
  const double bw = w2 - w1;
  const double w0 = std::sqrt(w1 * w2);
  const double zero_angle = 2.0 * std::atan(w0 / fs2);

  std::vector<Biquad> sections;
  for (int k = 0; k < order; ++k) {
    // Analog lowpass prototype pole in the left half plane.
    const Complex proto = -std::exp(Complex(0.0, kPi * (2 * k - order + 1) / (2.0 * order)));
    const Complex hp = (bw / 2.0) / proto;
    const Complex root = std::sqrt(hp * hp - w0 * w0);
    for (const Complex s : {hp + root, hp - root}) {
      const Complex z = (fs2 + s) / (fs2 - s);
      if (z.imag() > 0.0) sections.push_back(section_from_poles(z, zero_angle));
    }
  }
  if (static_cast<int>(sections.size()) != order) {
    throw std::logic_error("butterworth_bandstop: unexpected pole layout");
  }
  return sections;
}

VectorX<double> sosfilt(const std::vector<Biquad>& sections, const VectorX<double>& x) {
  VectorX<double> y = x;
  if (y.size() == 0) return y;
  for (const Biquad& s : sections) {
    // Steady state of a constant input equal to the first sample.
    const double u = y[0];
    const double gain = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    double z1 = (gain - s.b0) * u;
    double z2 = (s.b2 - s.a2 * gain) * u;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double in = y[i];
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      y[i] = out;
    }
  }
  return y;
}

VectorX<double> sosfiltfilt(const std::vector<Biquad>& sections, const VectorX<double>& x, Eigen::Index padlen) {
  const Eigen::Index n = x.size();
  padlen = std::min(padlen, n - 1);
  if (padlen < 0) padlen = 0;
  VectorX<double> ext(n + 2 * padlen);
  for (Eigen::Index i = 0; i < padlen; ++i) {
    ext[i] = 2.0 * x[0] - x[padlen - i];
    ext[n + padlen + i] = 2.0 * x[n - 1] - x[n - 2 - i];
  }
  ext.segment(padlen, n) = x;
  VectorX<double> fwd = sosfilt(sections, ext);
  fwd.reverseInPlace();
  VectorX<double> back = sosfilt(sections, fwd);
  back.reverseInPlace();
  return back.segment(padlen, n);
}

Signal notch(const Signal& signal, double base_hz, int order, bool zero_phase, double half_width_hz) {
  validate(signal);
  if (!(base_hz > 0.0)) throw std::invalid_argument("notch: base frequency must be > 0");
  if (order < 1) throw std::invalid_argument("notch: order must be >= 1");
  const double nyquist = signal.sample_rate / 2.0;

  std::vector<Biquad> cascade;
  for (int harmonic = 1; harmonic * base_hz < nyquist; ++harmonic) {
    const double center = harmonic * base_hz;
    if (center - half_width_hz <= 0.0 || center + half_width_hz >= nyquist) {
      std::ostringstream msg;
      msg << "notch: skipping " << center << " Hz, stop band does not fit below Nyquist " << nyquist << " Hz";
      log_info(msg.str());
      continue;
    }
    const std::vector<Biquad> band =
        butterworth_bandstop(center - half_width_hz, center + half_width_hz, order, signal.sample_rate);
    cascade.insert(cascade.end(), band.begin(), band.end());
  }
  if (cascade.empty()) {
    std::ostringstream msg;
    msg << "notch: " << base_hz << " Hz is at or above Nyquist " << nyquist << " Hz, signal unchanged";
    log_info(msg.str());
    return signal;
  }
  if (!zero_phase) return {sosfilt(cascade, signal.samples), signal.sample_rate};
  // Pad long enough for the slowest pole to ring down by 1e-6.
  double radius = 0.0;
  for (const Biquad& s : cascade) radius = std::max(radius, std::sqrt(std::abs(s.a2)));
  const auto padlen = static_cast<Eigen::Index>(std::ceil(std::log(1e-6) / std::log(radius)));
  return {sosfiltfilt(cascade, signal.samples, padlen), signal.sample_rate};
}

Signal detrend_poly(const Signal& signal, int order) {
  validate(signal);
  const Eigen::Index n = signal.size();
  if (order < 0) throw std::invalid_argument("detrend_poly: order must be >= 0");
  if (order >= n) {
    throw std::invalid_argument("detrend_poly: order " + std::to_string(order) + " needs more than " +
                                std::to_string(n) + " samples");
  }
  MatrixX<double> basis(n, order + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = n > 1 ? -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
    double p = 1.0;
    for (int d = 0; d <= order; ++d) {
      basis(i, d) = p;
      p *= t;
    }
  }
  const VectorX<double> coeffs = basis.colPivHouseholderQr().solve(signal.samples);
  return {signal.samples - basis * coeffs, signal.sample_rate};
}

Signal preprocess(const Signal& signal, const PreprocessConfig& config) {
  config.validate();
  Signal out = decimate(signal, config.decimation_factor);
  out = notch(out, config.notch_base_hz, config.notch_order, config.zero_phase, config.notch_half_width_hz);
  return detrend_poly(out, config.baseline_poly_order);
}

}  // namespace wpdenoise
