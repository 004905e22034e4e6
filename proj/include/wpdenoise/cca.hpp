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

#ifndef WPDENOISE_CCA_HPP_
#define WPDENOISE_CCA_HPP_

// Canonical correlation analysis used as a blind source separator: the
// multichannel signal X is correlated against its neighbour-sum companion
// y(t) = x(t-1) + x(t+1). The canonical variates are mutually uncorrelated
// sources ordered by how strongly each one predicts its own neighbourhood.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpdenoise/signal.hpp"

namespace wpdenoise::cca {

// m channels (rows) of n samples each.
template <typename Scalar>
struct MultiChannel {
  MatrixX<Scalar> channels;
  double sample_rate = 0.0;

  Eigen::Index count() const { return channels.rows(); }
  Eigen::Index length() const { return channels.cols(); }
};

template <typename Scalar>
struct CcaModel {
  MatrixX<Scalar> unmixing;  // W, one source per row
  MatrixX<Scalar> mixing;    // W^-1 (pseudo-inverse if W is singular)
  VectorX<Scalar> correlations;  // descending
  MatrixX<Scalar> weights_x;  // columns, unit norm
  MatrixX<Scalar> weights_y;  // columns, unit norm
  VectorX<Scalar> channel_means;
  Scalar ridge = 0;  // diagonal loading applied to the unit-variance covariances
};

// Sources (rows), ordered by descending canonical correlation.
template <typename Scalar>
struct SourceSet {
  MatrixX<Scalar> sources;
  double sample_rate = 0.0;

  Eigen::Index count() const { return sources.rows(); }
};

template <typename Scalar>
struct Covariances {
  MatrixX<Scalar> xx;
  MatrixX<Scalar> yy;
  MatrixX<Scalar> xy;
  VectorX<Scalar> means;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
void validate(const MultiChannel<Scalar>& x) {
  if (x.count() < 2) {
    throw std::invalid_argument("cca: need at least 2 channels, got " + std::to_string(x.count()));
  }
  if (x.length() <= x.count()) {
    throw std::invalid_argument("cca: need more samples (" + std::to_string(x.length()) + ") than channels (" +
                                std::to_string(x.count()) + ")");
  }
  if (!x.channels.allFinite()) throw std::invalid_argument("cca: non-finite samples");
}

// y_c(t) = x_c(t-1) + x_c(t+1); the end samples take their single neighbour.
template <typename Scalar>
MultiChannel<Scalar> build_delayed(const MultiChannel<Scalar>& x) {
  const Eigen::Index n = x.length();
  if (n < 3) {
    throw std::invalid_argument("build_delayed: need at least 3 samples, got " + std::to_string(n));
  }
  MultiChannel<Scalar> y{MatrixX<Scalar>(x.count(), n), x.sample_rate};
  y.channels.middleCols(1, n - 2) = x.channels.leftCols(n - 2) + x.channels.rightCols(n - 2);
  y.channels.col(0) = x.channels.col(1);
  y.channels.col(n - 1) = x.channels.col(n - 2);
  return y;
}

// Covariances of mean-centred X and its centred companion Y, without any
// diagonal loading. Divides by n.
template <typename Scalar>
Covariances<Scalar> covariances(const MultiChannel<Scalar>& x) {
  validate(x);
  const Scalar n = static_cast<Scalar>(x.length());
  Covariances<Scalar> c;
  c.means = x.channels.rowwise().mean();
  const MultiChannel<Scalar> xc{x.channels.colwise() - c.means, x.sample_rate};
  MultiChannel<Scalar> yc = build_delayed(xc);
  const VectorX<Scalar> ymeans = yc.channels.rowwise().mean();
  yc.channels.colwise() -= ymeans;
  c.xx = xc.channels * xc.channels.transpose() / n;
  c.yy = yc.channels * yc.channels.transpose() / n;
  c.xy = xc.channels * yc.channels.transpose() / n;
  return c;
}

// C + eps * trace(C)/m * I
template <typename Scalar>
MatrixX<Scalar> load_diagonal(const MatrixX<Scalar>& c, Scalar eps) {
  const Scalar shift = eps * c.trace() / static_cast<Scalar>(c.rows());
  MatrixX<Scalar> r = c;
  r.diagonal().array() += shift;
  return r;
}

// Solves Cxx^-1 Cxy Cyy^-1 Cyx w = rho^2 w. The problem is similar to the
// symmetric matrix L^-1 (Cxy Cyy^-1 Cyx) L^-T with Cxx = L L^T, which is
// what gets diagonalized; w = L^-T v.
template <typename Scalar>
CcaModel<Scalar> fit(const MultiChannel<Scalar>& x) {
  const Covariances<Scalar> cov = covariances(x);
  const Eigen::Index m = x.count();

  const Scalar max_var = cov.xx.diagonal().maxCoeff();
  std::string degenerate;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(cov.xx(i, i) > Scalar(1e-20) * max_var)) {
      degenerate += (degenerate.empty() ? "" : ", ") + std::to_string(i);
    }
  }
  if (!degenerate.empty()) {
    throw FitError("cca: rank-deficient covariance, zero-variance channel(s): " + degenerate);
  }

  // Work on unit-variance channels so the diagonal loading below is the same
  // relative amount for every channel; rho is unchanged by this rescaling.
  const VectorX<Scalar> inv_sd = cov.xx.diagonal().cwiseSqrt().cwiseInverse();
  const auto d = inv_sd.asDiagonal();
  const MatrixX<Scalar> cxx = d * cov.xx * d;
  const MatrixX<Scalar> cyy = d * cov.yy * d;
  const MatrixX<Scalar> cxy = d * cov.xy * d;

  Eigen::LLT<MatrixX<Scalar>> lxx;
  Eigen::LLT<MatrixX<Scalar>> lyy;
  Scalar ridge = 0;
  bool ok = false;
  for (const Scalar eps : {Scalar(1e-10), Scalar(1e-8)}) {
    lxx.compute(load_diagonal(cxx, eps));
    lyy.compute(load_diagonal(cyy, eps));
    if (lxx.info() == Eigen::Success && lyy.info() == Eigen::Success) {
      ridge = eps;
      ok = true;
      break;
    }
  }
  if (!ok) {
    throw FitError("cca: covariance not positive definite after diagonal loading (channels: " +
                   std::to_string(m) + ")");
  }

  const MatrixX<Scalar> cyx = cxy.transpose();
  const MatrixX<Scalar> between = cxy * lyy.solve(cyx);
  const MatrixX<Scalar> lower = lxx.matrixL();
  MatrixX<Scalar> sym = lower.template triangularView<Eigen::Lower>().solve(between);
  sym = lower.template triangularView<Eigen::Lower>().solve(sym.transpose()).eval();
  sym = (sym + sym.transpose()).eval() / Scalar(2);

  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> eig(sym);
  if (eig.info() != Eigen::Success) throw FitError("cca: eigen decomposition did not converge");
  const MatrixX<Scalar> wx_raw =
      lower.transpose().template triangularView<Eigen::Upper>().solve(eig.eigenvectors());

  // Eigenvalues come back ascending.
  std::vector<Eigen::Index> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return eig.eigenvalues()[a] > eig.eigenvalues()[b];
  });

  CcaModel<Scalar> model;
  model.ridge = ridge;
  model.channel_means = cov.means;
  model.correlations.resize(m);
  model.weights_x.resize(m, m);
  model.weights_y.resize(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index src = order[static_cast<size_t>(k)];
    const Scalar rho2 = std::max(eig.eigenvalues()[src], Scalar(0));
    model.correlations[k] = std::sqrt(rho2);

    const VectorX<Scalar> w_unit = wx_raw.col(src);
    VectorX<Scalar> w = inv_sd.cwiseProduct(w_unit).normalized();
    Eigen::Index peak = 0;
    w.cwiseAbs().maxCoeff(&peak);
    const Scalar sign = w[peak] < 0 ? Scalar(-1) : Scalar(1);
    model.weights_x.col(k) = sign * w;

    const VectorX<Scalar> wy = inv_sd.cwiseProduct(lyy.solve(cyx * (sign * w_unit)));
    const Scalar norm = wy.norm();
    model.weights_y.col(k) = norm > 0 ? VectorX<Scalar>(wy / norm) : VectorX<Scalar>::Zero(m);
  }
  model.unmixing = model.weights_x.transpose();

  Eigen::FullPivLU<MatrixX<Scalar>> lu(model.unmixing);
  if (lu.isInvertible()) {
    model.mixing = lu.inverse();
  } else {
    model.mixing = Eigen::CompleteOrthogonalDecomposition<MatrixX<Scalar>>(model.unmixing).pseudoInverse();
  }
  return model;
}

// S = W (X - means)
template <typename Scalar>
SourceSet<Scalar> sources(const CcaModel<Scalar>& model, const MultiChannel<Scalar>& x) {
  if (x.count() != model.unmixing.cols()) {
    throw std::invalid_argument("cca::sources: model expects " + std::to_string(model.unmixing.cols()) +
                                " channels, got " + std::to_string(x.count()));
  }
  return {model.unmixing * (x.channels.colwise() - model.channel_means), x.sample_rate};
}

// Zeroes the sources whose mask entry is false, maps back through W^-1 and
// restores the channel means.
template <typename Scalar>
MultiChannel<Scalar> reconstruct(const CcaModel<Scalar>& model, const SourceSet<Scalar>& src,
                                 const std::vector<bool>& keep_mask) {
  if (static_cast<Eigen::Index>(keep_mask.size()) != src.count()) {
    throw std::invalid_argument("cca::reconstruct: mask has " + std::to_string(keep_mask.size()) +
                                " entries for " + std::to_string(src.count()) + " sources");
  }
  if (src.count() != model.mixing.cols()) {
    throw std::invalid_argument("cca::reconstruct: source count does not match the model");
  }
  MatrixX<Scalar> kept = src.sources;
  for (size_t i = 0; i < keep_mask.size(); ++i) {
    if (!keep_mask[i]) kept.row(static_cast<Eigen::Index>(i)).setZero();
  }
  MultiChannel<Scalar> out{model.mixing * kept, src.sample_rate};
  out.channels.colwise() += model.channel_means;
  return out;
}

}  // namespace wpdenoise::cca

#endif  // WPDENOISE_CCA_HPP_
