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


#include "wpdenoise/cca.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>
#include <stdexcept>

#include "test_util.hpp"
#include "wpdenoise/metrics.hpp"

namespace wpdenoise {
namespace {

using cca::MultiChannel;
using testing::gaussian;
using testing::sine;

VectorX<double> ar1(Eigen::Index n, double phi, std::uint64_t seed) {
  const VectorX<double> e = gaussian(n, seed);
  VectorX<double> x(n);
  x[0] = e[0];
  for (Eigen::Index i = 1; i < n; ++i) x[i] = phi * x[i - 1] + e[i];
  return x;
}

// Three generators with distinct lag structure, mixed by a fixed matrix.
MatrixX<double> generators(Eigen::Index n) {
  MatrixX<double> s(3, n);
  s.row(0) = sine(n, 3.0, 200.0).transpose();
  s.row(1) = ar1(n, 0.6, 21).transpose();
  s.row(2) = gaussian(n, 22).transpose();
  return s;
}

MatrixX<double> mixing3() {
  MatrixX<double> a(3, 3);
  a << 1.0, 0.5, 0.2,  //
      0.3, 1.0, 0.4,   //
      0.2, 0.6, 1.0;
  return a;
}

MultiChannel<double> random_channels(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  MatrixX<double> x(m, n);
  for (Eigen::Index c = 0; c < m; ++c) x.row(c) = ar1(n, 0.9 * static_cast<double>(c) / m, seed + c).transpose();
  return {x, 100.0};
}

TEST(BuildDelayed, WorkedExample) {
  const MultiChannel<double> x{MatrixX<double>{{1.0, 2.0, 3.0, 4.0}, {5.0, 5.0, 5.0, 5.0}}, 1.0};
  const MultiChannel<double> y = cca::build_delayed(x);
  EXPECT_EQ(y.channels.row(0), (Eigen::RowVectorXd{{2.0, 4.0, 6.0, 3.0}}));
  // Constant channel: interior is twice the constant.
  EXPECT_EQ(y.channels(1, 1), 10.0);
  EXPECT_EQ(y.channels(1, 2), 10.0);
}

TEST(BuildDelayed, SinusoidIsScaledCopy) {
  const Eigen::Index n = 500;
  MatrixX<double> x(2, n);
  x.row(0) = sine(n, 1.0, 100.0).transpose();
  x.row(1) = gaussian(n, 1).transpose();
  const MultiChannel<double> y = cca::build_delayed(MultiChannel<double>{x, 100.0});
  const double k = 2.0 * std::cos(2.0 * std::numbers::pi / 100.0);
  for (Eigen::Index t = 1; t + 1 < n; ++t) EXPECT_NEAR(y.channels(0, t), k * x(0, t), 1e-12);
}

TEST(BuildDelayed, RejectsShort) {
  EXPECT_THROW(cca::build_delayed(MultiChannel<double>{MatrixX<double>::Ones(2, 2), 1.0}), std::invalid_argument);
}

TEST(Validate, Rejects) {
  EXPECT_THROW(cca::fit(MultiChannel<double>{MatrixX<double>::Random(1, 50), 1.0}), std::invalid_argument);
  EXPECT_THROW(cca::fit(MultiChannel<double>{MatrixX<double>::Random(4, 4), 1.0}), std::invalid_argument);
  MatrixX<double> bad = random_channels(3, 100, 1).channels;
  bad(1, 10) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(cca::fit(MultiChannel<double>{bad, 1.0}), std::invalid_argument);
}

TEST(Fit, ZeroVarianceChannelIsNamed) {
  MatrixX<double> x = random_channels(3, 200, 4).channels;
  x.row(2).setConstant(7.0);
  try {
    cca::fit(MultiChannel<double>{x, 1.0});
    FAIL() << "expected FitError";
  } catch (const cca::FitError& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
}

TEST(Fit, SinusoidVersusNoise) {
  const Eigen::Index n = 4000;
  const VectorX<double> s = sine(n, 2.0, 250.0);
  const VectorX<double> w = gaussian(n, 8);
  MatrixX<double> x(2, n);
  x.row(0) = (s + 0.3 * w).transpose();
  x.row(1) = (0.4 * s + w).transpose();
  const auto model = cca::fit(MultiChannel<double>{x, 250.0});
  const auto src = cca::sources(model, MultiChannel<double>{x, 250.0});
  EXPECT_GT(std::abs(pearson(VectorX<double>(src.sources.row(0).transpose()), s)), 0.99);
  EXPECT_GT(model.correlations[0], model.correlations[1]);
}

TEST(Fit, IdenticalSlowSinusoids) {
  const Eigen::Index n = 5000;
  const VectorX<double> s = sine(n, 0.5, 100.0);
  MatrixX<double> x(2, n);
  x.row(0) = (s + 1e-4 * gaussian(n, 1)).transpose();
  x.row(1) = (s + 1e-4 * gaussian(n, 2)).transpose();
  const auto model = cca::fit(MultiChannel<double>{x, 100.0});
  EXPECT_NEAR(model.correlations[0], 1.0, 1e-3);
}

TEST(Fit, SeparatesThreeGenerators) {
  const Eigen::Index n = 6000;
  const MatrixX<double> s = generators(n);
  const MultiChannel<double> x{mixing3() * s, 200.0};
  const auto model = cca::fit(x);
  const auto src = cca::sources(model, x);
  std::vector<int> matched;
  for (Eigen::Index k = 0; k < 3; ++k) {
    int best = -1;
    for (int g = 0; g < 3; ++g) {
      const double r = std::abs(pearson(VectorX<double>(src.sources.row(k).transpose()),
                                        VectorX<double>(s.row(g).transpose())));
      if (r > 0.99) best = g;
    }
    EXPECT_GE(best, 0) << "source " << k;
    matched.push_back(best);
  }
  // Ordering follows autocorrelation: sinusoid, AR(1), white noise.
  EXPECT_EQ(matched, (std::vector<int>{0, 1, 2}));
}

TEST(Fit, SixteenChannelsGiveSixteenComponents) {
  const auto x = random_channels(16, 3000, 100);
  const auto model = cca::fit(x);
  EXPECT_EQ(model.correlations.size(), 16);
  EXPECT_EQ(model.unmixing.rows(), 16);
  EXPECT_EQ(cca::sources(model, x).sources.rows(), 16);
}

TEST(Fit, CorrelationInvariants) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto model = cca::fit(random_channels(6, 2000, seed * 10));
    for (Eigen::Index k = 0; k < model.correlations.size(); ++k) {
      EXPECT_GE(model.correlations[k], 0.0);
      EXPECT_LE(model.correlations[k], 1.0 + 1e-9);
      if (k > 0) EXPECT_LE(model.correlations[k], model.correlations[k - 1]);
      EXPECT_NEAR(model.weights_x.col(k).norm(), 1.0, 1e-12);
      Eigen::Index peak = 0;
      model.weights_x.col(k).cwiseAbs().maxCoeff(&peak);
      EXPECT_GT(model.weights_x(peak, k), 0.0);
    }
    EXPECT_LT((model.unmixing * model.mixing - MatrixX<double>::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(Fit, RoundTrip) {
  const auto x = random_channels(5, 1500, 77);
  MatrixX<double> shifted = x.channels;
  shifted.row(2).array() += 40.0;
  const MultiChannel<double> xs{shifted, 1.0};
  const auto model = cca::fit(xs);
  const auto back = cca::reconstruct(model, cca::sources(model, xs), std::vector<bool>(5, true));
  EXPECT_LT((back.channels - shifted).norm() / shifted.norm(), 1e-6);
}

TEST(Fit, ScaleInvariantCorrelations) {
  const auto x = random_channels(4, 2500, 300);
  MatrixX<double> scaled = x.channels;
  const double scales[] = {0.01, 3.0, 250.0, 1.0};
  for (int c = 0; c < 4; ++c) scaled.row(c) = (scaled.row(c).array() * scales[c] + 5.0 * c).matrix();
  const auto a = cca::fit(x);
  const auto b = cca::fit(MultiChannel<double>{scaled, 1.0});
  EXPECT_LT((a.correlations - b.correlations).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Fit, SecondEquationGivesSameSpectrum) {
  // Independent solve of Cyy^-1 Cyx Cxx^-1 Cxy w_y = rho^2 w_y with a general eigensolver.
  const auto x = random_channels(5, 3000, 500);
  const auto model = cca::fit(x);
  const auto cov = cca::covariances(x);
  const VectorX<double> sd = cov.xx.diagonal().cwiseSqrt();
  const auto d = sd.cwiseInverse().asDiagonal();
  const MatrixX<double> cxx = cca::load_diagonal<double>(d * cov.xx * d, model.ridge);
  const MatrixX<double> cyy = cca::load_diagonal<double>(d * cov.yy * d, model.ridge);
  const MatrixX<double> cxy = d * cov.xy * d;
  const MatrixX<double> cyx = cxy.transpose();
  const MatrixX<double> second = cyy.inverse() * cyx * cxx.inverse() * cxy;
  Eigen::EigenSolver<MatrixX<double>> es(second);
  std::vector<double> rho2;
  for (Eigen::Index i = 0; i < 5; ++i) {
    EXPECT_LT(std::abs(es.eigenvalues()[i].imag()), 1e-8);
    rho2.push_back(es.eigenvalues()[i].real());
  }
  std::sort(rho2.rbegin(), rho2.rend());
  for (Eigen::Index i = 0; i < 5; ++i) {
    EXPECT_NEAR(rho2[static_cast<size_t>(i)], model.correlations[i] * model.correlations[i], 1e-8);
  }
  // First equation through the same general solver.
  const MatrixX<double> first = cxx.inverse() * cxy * cyy.inverse() * cyx;
  Eigen::EigenSolver<MatrixX<double>> es1(first);
  std::vector<double> rho2_first;
  for (Eigen::Index i = 0; i < 5; ++i) rho2_first.push_back(es1.eigenvalues()[i].real());
  std::sort(rho2_first.rbegin(), rho2_first.rend());
  for (size_t i = 0; i < 5; ++i) EXPECT_NEAR(rho2_first[i], rho2[i], 1e-8);
}

TEST(Sources, MutuallyUncorrelated) {
  const auto x = random_channels(6, 4000, 900);
  const auto src = cca::sources(cca::fit(x), x).sources;
  for (Eigen::Index a = 0; a < 6; ++a) {
    for (Eigen::Index b = a + 1; b < 6; ++b) {
      EXPECT_LT(std::abs(pearson(VectorX<double>(src.row(a).transpose()), VectorX<double>(src.row(b).transpose()))),
                1e-6);
    }
  }
}

TEST(Sources, NeighbourAutocorrelationNonIncreasing) {
  // The canonical correlation of source k is the correlation between s_k(t)
  // and s_k(t-1) + s_k(t+1) computed with the fitted y weights; for sources
  // this reduces to the lag structure ordering.
  const auto x = random_channels(5, 6000, 1234);
  const auto src = cca::sources(cca::fit(x), x).sources;
  std::vector<double> ac;
  for (Eigen::Index k = 0; k < 5; ++k) {
    const VectorX<double> s = src.row(k).transpose();
    const VectorX<double> y = cca::build_delayed(MultiChannel<double>{MatrixX<double>(s.transpose()), 1.0})
                                  .channels.row(0)
                                  .transpose();
    ac.push_back(pearson(s, y));
  }
  for (size_t k = 1; k < ac.size(); ++k) EXPECT_LE(ac[k], ac[k - 1] + 1e-3) << k;
}

TEST(Sources, IdentityModelPassesThrough) {
  cca::CcaModel<double> model;
  model.unmixing = MatrixX<double>::Identity(3, 3);
  model.mixing = model.unmixing;
  model.channel_means = VectorX<double>::Zero(3);
  const MatrixX<double> x = generators(100);
  const auto src = cca::sources(model, MultiChannel<double>{x, 1.0});
  EXPECT_EQ(src.sources, x);
  EXPECT_THROW(cca::sources(model, MultiChannel<double>{MatrixX<double>::Zero(2, 100), 1.0}),
               std::invalid_argument);
}

TEST(Reconstruct, AllFalseGivesMeans) {
  MatrixX<double> x = random_channels(3, 400, 2).channels;
  x.row(0).array() += 3.0;
  x.row(1).array() -= 8.0;
  const MultiChannel<double> mc{x, 1.0};
  const auto model = cca::fit(mc);
  const auto out = cca::reconstruct(model, cca::sources(model, mc), std::vector<bool>(3, false));
  for (Eigen::Index c = 0; c < 3; ++c) {
    EXPECT_LT((out.channels.row(c).array() - x.row(c).mean()).abs().maxCoeff(), 1e-10);
  }
  EXPECT_THROW(cca::reconstruct(model, cca::sources(model, mc), std::vector<bool>(2, true)), std::invalid_argument);
}

TEST(Reconstruct, DroppedSourceMatchesOuterProduct) {
  const MultiChannel<double> x{mixing3() * generators(3000), 200.0};
  const auto model = cca::fit(x);
  const auto src = cca::sources(model, x);
  const auto out = cca::reconstruct(model, src, {true, true, false});
  const MatrixX<double> contribution = model.mixing.col(2) * src.sources.row(2);
  EXPECT_LT((x.channels - out.channels - contribution).cwiseAbs().maxCoeff(), 1e-8);
}

}  // namespace
}  // namespace wpdenoise
