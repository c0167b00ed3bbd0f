// Copyright 2026 The qpure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference computations for the tests. Everything here goes straight to
// Eigen's solvers and never calls into the library's own decompositions,
// so agreement is a genuine cross-check.

#ifndef QPURE_TESTS_ORACLES_HPP
#define QPURE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "qpure/qpure.hpp"

namespace oracle {

using qpure::CMatrix;
using qpure::CVector;
using Mat = CMatrix<double>;
using Vec = CVector<double>;

inline Eigen::VectorXd eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// (1/2) sum |lambda(a - b)|
inline double trace_distance(const Mat& a, const Mat& b) {
  return 0.5 * eigenvalues(a - b).cwiseAbs().sum();
}

inline double purity(const Mat& m) { return (m * m).trace().real(); }

/// Columns spanning the eigenvectors with eigenvalue above `cut`.
inline Mat support_basis(const Mat& rho, double cut = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Mat> es((rho + rho.adjoint()) / 2.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > cut) keep.push_back(i);
  Mat b(rho.rows(), Eigen::Index(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) b.col(Eigen::Index(k)) = es.eigenvectors().col(keep[k]);
  return b;
}

inline Mat support_projector(const Mat& rho) {
  const Mat b = support_basis(rho);
  return b * b.adjoint();
}

/// Largest cosine between the supports is sqrt(lambda_max(P1 P2 P1)).
inline double wcd(const Mat& rho1, const Mat& rho2) {
  const Mat p1 = support_projector(rho1);
  const Mat p2 = support_projector(rho2);
  const double c2 = std::clamp(eigenvalues(p1 * p2 * p1).maxCoeff(), 0.0, 1.0);
  if (c2 > 1.0 - 1e-9) return 0.0;
  return std::sqrt(1.0 - c2);
}

/// sqrt(1 - |<a|b>|^2)
inline double pure_distance(const Vec& a, const Vec& b) {
  return std::sqrt(std::max(0.0, 1.0 - std::norm(a.dot(b))));
}

inline Eigen::Index rank(const Mat& m) {
  if (m.cols() == 0) return 0;
  Eigen::FullPivLU<Mat> lu(m);
  lu.setThreshold(1e-7);
  return lu.rank();
}

/// USD is possible iff no support lies inside the span of the others:
/// appending the i-th support basis must raise the rank.
inline bool usd_feasible(const std::vector<Mat>& states) {
  const Eigen::Index n = states.front().rows();
  for (std::size_t i = 0; i < states.size(); ++i) {
    Mat others(n, 0);
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (j == i) continue;
      const Mat b = support_basis(states[j]);
      Mat grown(n, others.cols() + b.cols());
      grown << others, b;
      others = grown;
    }
    const Mat bi = support_basis(states[i]);
    Mat all(n, others.cols() + bi.cols());
    all << others, bi;
    if (rank(all) == rank(others)) return false;
  }
  return true;
}

inline bool is_psd(const Mat& m, double slack = 1e-12) { return eigenvalues(m).minCoeff() >= -slack; }

/// Best equal success probability for unambiguous discrimination of two
/// pure qubit states. POVM: a|psi2_perp><psi2_perp|, b|psi1_perp><psi1_perp|
/// and the remainder. A coarse scan over (a, b) locates the optimum, and
/// bisection along a = b pins the boundary of positivity.
inline double usd_success_two_pure(const Vec& psi1, const Vec& psi2) {
  auto perp = [](const Vec& v) {
    Vec w(2);
    w << -std::conj(v(1)), std::conj(v(0));
    return w;
  };
  const Mat e1 = perp(psi2) * perp(psi2).adjoint();
  const Mat e2 = perp(psi1) * perp(psi1).adjoint();
  auto feasible = [&](double a, double b) {
    return is_psd(Mat(Mat::Identity(2, 2) - a * e1 - b * e2));
  };
  auto success = [&](double a, double b) {
    const double p1 = a * (psi1.adjoint() * e1 * psi1)(0, 0).real();
    const double p2 = b * (psi2.adjoint() * e2 * psi2)(0, 0).real();
    return std::min(p1, p2);
  };
  double best_grid = 0.0;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      const double a = i / 200.0, b = j / 200.0;
      if (feasible(a, b)) best_grid = std::max(best_grid, success(a, b));
    }
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid, mid) ? lo : hi) = mid;
  }
  return std::max(best_grid, success(lo, lo));
}

/// Kraus operators of a random channel from a Haar-like isometry
/// V: C^dim_in -> C^dim_out (x) C^env, output factor first.
inline qpure::KrausChannel<double> random_channel(Eigen::Index dim_in, Eigen::Index dim_out,
                                                  Eigen::Index env, qpure::Xoshiro256& rng) {
  const Mat v = qpure::random_isometry<double>(dim_out * env, dim_in, rng);
  std::vector<Mat> ks;
  for (Eigen::Index a = 0; a < env; ++a) {
    Mat k(dim_out, dim_in);
    for (Eigen::Index i = 0; i < dim_out; ++i) k.row(i) = v.row(i * env + a);
    ks.push_back(k);
  }
  return qpure::KrausChannel<double>(dim_in, dim_out, ks);
}

/// Random state with rank in [1, min(dim, max_rank)].
inline qpure::DensityOperator<double> random_state(Eigen::Index dim, Eigen::Index max_rank,
                                                   qpure::Xoshiro256& rng) {
  const Eigen::Index r = 1 + Eigen::Index(rng.uniform_index(std::uint64_t(std::min(dim, max_rank))));
  return qpure::random_density<double>(dim, r, rng);
}

/// Closed form of D(rho1, rho2) for the counter-example pair.
inline double counter_example_distance(double p) {
  return std::sqrt(0.5 + (1.0 - 2.0 * p) * (1.0 - 2.0 * p) / 4.0);
}

}  // namespace oracle

#endif  // QPURE_TESTS_ORACLES_HPP
