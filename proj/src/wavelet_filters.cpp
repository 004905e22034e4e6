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

#include "wpdenoise/wavelet_filters.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace wpdenoise {
namespace {

// Lowpass reconstruction filters, h[0] first. Daubechies, symlet and coiflet
// values are the standard published tables; Fejer-Korovkin values follow the
// Nielsen construction as tabulated in common wavelet toolboxes, then moved by
// at most 2.5e-9 onto the exact orthonormality and zero-at-Nyquist
// constraints, since the tabulated digits satisfy them only to about 1e-8.
constexpr std::array<double, 2> kDb1 = {
    0.7071067811865476,
    0.7071067811865476};

constexpr std::array<double, 4> kDb2 = {
    0.48296291314453416,
    0.8365163037378079,
    0.2241438680420134,
    -0.12940952255126037};

constexpr std::array<double, 6> kDb3 = {
    0.33267055295008263,
    0.8068915093110925,
    0.45987750211849154,
    -0.13501102001025458,
    -0.08544127388202666,
    0.03522629188570953};

constexpr std::array<double, 8> kSym4 = {
    0.0322231006040427,
    -0.012603967262037833,
    -0.09921954357684722,
    0.29785779560527736,
    0.8037387518059161,
    0.49761866763201545,
    -0.02963552764599851,
    -0.07576571478927333};

constexpr std::array<double, 10> kSym5 = {
    0.019538882735286728,
    -0.021101834024758855,
    -0.17532808990845047,
    0.01660210576452232,
    0.6339789634582119,
    0.7234076904024206,
    0.1993975339773936,
    -0.039134249302383094,
    0.029519490925774643,
    0.027333068345077982};

constexpr std::array<double, 12> kSym6 = {
    -0.007800708325034148,
    0.0017677118642428036,
    0.04472490177066578,
    -0.021060292512300564,
    -0.07263752278646252,
    0.3379294217276218,
    0.787641141030194,
    0.4910559419267466,
    -0.048311742585633,
    -0.11799011114819057,
    0.0034907120842174702,
    0.015404109327027373};

constexpr std::array<double, 6> kCoif1 = {
    -0.07273261951252645,
    0.3378976624574818,
    0.8525720202116004,
    0.3848648468648578,
    -0.07273261951252645,
    -0.015655728135791993};

constexpr std::array<double, 12> kCoif2 = {
    0.01638733646320364,
    -0.04146493678687178,
    -0.0673725547237256,
    0.3861100668227629,
    0.8127236354494135,
    0.4170051844232391,
    -0.07648859907828076,
    -0.05943441864643109,
    0.02368017194684777,
    0.005611434819368834,
    -0.0018232088709110323,
    -0.000720549445520347};

constexpr std::array<double, 18> kCoif3 = {
    -0.003793512864380802,
    0.007782596425672746,
    0.023452696142077168,
    -0.06577191128146936,
    -0.06112339000297255,
    0.40517690240911824,
    0.7937772226260872,
    0.42848347637737,
    -0.07179982161915484,
    -0.08230192710629983,
    0.03455502757329774,
    0.015880544863669452,
    -0.009007976136730624,
    -0.0025745176881367972,
    0.0011175187708306303,
    0.0004662169598204029,
    -7.0983302506379e-05,
    -3.459977319727278e-05};

constexpr std::array<double, 4> kFk4 = {
    0.6539275539886266,
    0.7532724944206264,
    0.05317922719792097,
    -0.04616571323407886};

constexpr std::array<double, 6> kFk6 = {
    0.4279150309955773,
    0.8129196447664512,
    0.3563695095576146,
    -0.14643867881781067,
    -0.07717775936664441,
    0.040625815237907016};

constexpr std::array<double, 8> kFk8 = {
    0.3492381120012418,
    0.7826836196738387,
    0.4752651348043677,
    -0.09968332764920301,
    -0.15997809701501944,
    0.04310666775368325,
    0.04258163139595748,
    -0.019000178591771364};

template <size_t N>
VectorX<double> to_vector(const std::array<double, N>& a) {
  VectorX<double> v(static_cast<Eigen::Index>(N));
  for (size_t i = 0; i < N; ++i) v[static_cast<Eigen::Index>(i)] = a[i];
  return v;
}

bool supported(Family family, int order) {
  switch (family) {
    case Family::kDaubechies:
      return order >= 1 && order <= 3;
    case Family::kSymlet:
      return order >= 4 && order <= 6;
    case Family::kCoiflet:
      return order >= 1 && order <= 3;
    case Family::kFejerKorovkin:
      return order == 4 || order == 6 || order == 8;
  }
  return false;
}

const char* prefix(Family family) {
  switch (family) {
    case Family::kDaubechies:
      return "db";
    case Family::kSymlet:
      return "sym";
    case Family::kCoiflet:
      return "coif";
    case Family::kFejerKorovkin:
      return "fk";
  }
  return "?";
}

}  // namespace

WaveletFamily WaveletFamily::make(Family family, int order) {
  if (!supported(family, order)) {
    throw std::invalid_argument(std::string("unsupported wavelet packet: ") + prefix(family) +
                                std::to_string(order) +
                                " (supported: db1-db3, sym4-sym6, coif1-coif3, fk4, fk6, fk8)");
  }
  return WaveletFamily(family, order);
}

WaveletFamily WaveletFamily::parse(std::string_view name) {
  static constexpr std::array<std::pair<std::string_view, Family>, 4> kPrefixes = {{
      {"coif", Family::kCoiflet},
      {"sym", Family::kSymlet},
      {"db", Family::kDaubechies},
      {"fk", Family::kFejerKorovkin},
  }};
  for (const auto& [p, family] : kPrefixes) {
    if (!name.starts_with(p)) continue;
    const std::string_view digits = name.substr(p.size());
    int order = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) break;
    return make(family, order);
  }
  throw std::invalid_argument("unknown wavelet packet name '" + std::string(name) + "'");
}

const std::vector<WaveletFamily>& WaveletFamily::all() {
  static const std::vector<WaveletFamily> kAll = {
      make(Family::kDaubechies, 1),    make(Family::kDaubechies, 2),    make(Family::kDaubechies, 3),
      make(Family::kSymlet, 4),        make(Family::kSymlet, 5),        make(Family::kSymlet, 6),
      make(Family::kCoiflet, 1),       make(Family::kCoiflet, 2),       make(Family::kCoiflet, 3),
      make(Family::kFejerKorovkin, 4), make(Family::kFejerKorovkin, 6), make(Family::kFejerKorovkin, 8),
  };
  return kAll;
}

std::string WaveletFamily::name() const { return prefix(family_) + std::to_string(order_); }

int WaveletFamily::length() const {
  switch (family_) {
    case Family::kDaubechies:
    case Family::kSymlet:
      return 2 * order_;
    case Family::kCoiflet:
      return 6 * order_;
    case Family::kFejerKorovkin:
      return order_;
  }
  return 0;
}

WaveletFilter<double> filter_for(const WaveletFamily& family) {
  VectorX<double> h;
  switch (family.family()) {
    case Family::kDaubechies:
      h = family.order() == 1 ? to_vector(kDb1) : family.order() == 2 ? to_vector(kDb2) : to_vector(kDb3);
      break;
    case Family::kSymlet:
      h = family.order() == 4 ? to_vector(kSym4) : family.order() == 5 ? to_vector(kSym5) : to_vector(kSym6);
      break;
    case Family::kCoiflet:
      h = family.order() == 1 ? to_vector(kCoif1) : family.order() == 2 ? to_vector(kCoif2) : to_vector(kCoif3);
      break;
    case Family::kFejerKorovkin:
      h = family.order() == 4 ? to_vector(kFk4) : family.order() == 6 ? to_vector(kFk6) : to_vector(kFk8);
      break;
  }
  VectorX<double> g = highpass_from_lowpass(h);
  return {std::move(h), std::move(g), family};
}

}  // namespace wpdenoise
