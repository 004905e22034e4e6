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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wpdenoise {
namespace {

}  // namespace

// Readable parameter values in test listings.
void PrintTo(const WaveletFamily& f, std::ostream* os) { *os << f.name(); }

namespace {

class AllFilters : public ::testing::TestWithParam<WaveletFamily> {};

TEST_P(AllFilters, SatisfiesInvariants) {
  const WaveletFilter<double> f = filter_for(GetParam());
  const Eigen::Index len = f.length();
  ASSERT_EQ(f.g.size(), len);
  EXPECT_NEAR(f.h.sum(), std::numbers::sqrt2, 1e-10);
  EXPECT_NEAR(f.h.squaredNorm(), 1.0, 1e-10);
  for (Eigen::Index m = 1; 2 * m < len; ++m) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k + 2 * m < len; ++k) acc += f.h[k] * f.h[k + 2 * m];
    EXPECT_NEAR(acc, 0.0, 1e-10) << "shift " << 2 * m;
  }
  for (Eigen::Index k = 0; k < len; ++k) {
    EXPECT_EQ(f.g[k], (k % 2 == 0 ? 1.0 : -1.0) * f.h[len - 1 - k]);
  }
  EXPECT_NEAR(f.g.sum(), 0.0, 1e-10);
  EXPECT_EQ(f.family, GetParam());
}

TEST_P(AllFilters, LengthMatchesFamily) {
  const WaveletFamily fam = GetParam();
  int want = 0;
  switch (fam.family()) {
    case Family::kDaubechies:
    case Family::kSymlet:
      want = 2 * fam.order();
      break;
    case Family::kCoiflet:
      want = 6 * fam.order();
      break;
    case Family::kFejerKorovkin:
      want = fam.order();
      break;
  }
  EXPECT_EQ(filter_for(fam).length(), want);
  EXPECT_EQ(fam.length(), want);
}

TEST_P(AllFilters, NameRoundTrips) { EXPECT_EQ(WaveletFamily::parse(GetParam().name()), GetParam()); }

INSTANTIATE_TEST_SUITE_P(Twelve, AllFilters, ::testing::ValuesIn(WaveletFamily::all()),
                         [](const auto& info) { return info.param.name(); });

TEST(WaveletFamily, ExactlyTheTwelveSupported) {
  std::vector<std::string> names;
  for (const WaveletFamily& f : WaveletFamily::all()) names.push_back(f.name());
  EXPECT_EQ(names, (std::vector<std::string>{"db1", "db2", "db3", "sym4", "sym5", "sym6", "coif1", "coif2",
                                             "coif3", "fk4", "fk6", "fk8"}));
  EXPECT_THROW(WaveletFamily::make(Family::kDaubechies, 4), std::invalid_argument);
  EXPECT_THROW(WaveletFamily::make(Family::kSymlet, 2), std::invalid_argument);
  EXPECT_THROW(WaveletFamily::make(Family::kFejerKorovkin, 22), std::invalid_argument);
  EXPECT_THROW(WaveletFamily::parse("haar"), std::invalid_argument);
  EXPECT_THROW(WaveletFamily::parse("db"), std::invalid_argument);
  EXPECT_THROW(WaveletFamily::parse(""), std::invalid_argument);
}

TEST(WaveletFilter, HaarIsAnalyticallyForced) {
  const WaveletFilter<double> f = filter_for(WaveletFamily::parse("db1"));
  const double r = 1.0 / std::numbers::sqrt2;
  ASSERT_EQ(f.length(), 2);
  EXPECT_NEAR(f.h[0], r, 1e-15);
  EXPECT_NEAR(f.h[1], r, 1e-15);
  EXPECT_NEAR(f.g[0], r, 1e-15);
  EXPECT_NEAR(f.g[1], -r, 1e-15);
}

TEST(WaveletFilter, Db2LeadingTaps) {
  // Closed form: h = [1+√3, 3+√3, 3−√3, 1−√3] / (4√2).
  const WaveletFilter<double> f = filter_for(WaveletFamily::parse("db2"));
  const double s3 = std::sqrt(3.0);
  const double d = 4.0 * std::numbers::sqrt2;
  const VectorX<double> want{{(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d}};
  EXPECT_LT((f.h - want).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(f.h[0], 0.48296, 1e-5);
  EXPECT_NEAR(f.h[1], 0.83652, 1e-5);
}

TEST(WaveletFilter, VanishingMomentsOfDaubechies) {
  // db_N highpass annihilates polynomials of degree < N.
  for (int order : {1, 2, 3}) {
    const WaveletFilter<double> f = filter_for(WaveletFamily::make(Family::kDaubechies, order));
    for (int p = 0; p < order; ++p) {
      double acc = 0.0;
      for (Eigen::Index k = 0; k < f.length(); ++k) acc += std::pow(static_cast<double>(k), p) * f.g[k];
      EXPECT_NEAR(acc, 0.0, 1e-9) << "db" << order << " moment " << p;
    }
  }
}

TEST(HighpassFromLowpass, Haar) {
  const double r = 1.0 / std::numbers::sqrt2;
  const VectorX<double> g = highpass_from_lowpass<double>(VectorX<double>{{r, r}});
  EXPECT_EQ(g, (VectorX<double>{{r, -r}}));
}

TEST(HighpassFromLowpass, Db2SumsToZero) {
  const VectorX<double> g = highpass_from_lowpass(filter_for(WaveletFamily::parse("db2")).h);
  EXPECT_NEAR(g.sum(), 0.0, 1e-10);
}

TEST(HighpassFromLowpass, TwiceGivesSignFlippedH) {
  // g2[k] = (-1)^k g[L-1-k] = (-1)^k (-1)^(L-1-k) h[k] = -h[k] for even L.
  const VectorX<double> h = filter_for(WaveletFamily::parse("db2")).h;
  const VectorX<double> twice = highpass_from_lowpass(highpass_from_lowpass(h));
  EXPECT_LT((twice + h).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(HighpassFromLowpass, RejectsOddAndEmpty) {
  EXPECT_THROW(highpass_from_lowpass<double>(VectorX<double>{{1.0, 2.0, 3.0}}), std::invalid_argument);
  EXPECT_THROW(highpass_from_lowpass<double>(VectorX<double>()), std::invalid_argument);
}

TEST(WaveletFilter, CastsToFloat) {
  const WaveletFilter<float> f = filter_for(WaveletFamily::parse("sym4")).cast<float>();
  EXPECT_NEAR(f.h.sum(), std::numbers::sqrt2_v<float>, 1e-6f);
}

}  // namespace
}  // namespace wpdenoise
