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

#ifndef QPURE_STATES_HPP
#define QPURE_STATES_HPP

#include <cstdint>

#include "qpure/matcore.hpp"
#include "qpure/random.hpp"

namespace qpure {

/// Hermitian, positive semidefinite, unit-trace operator.
///
/// Validated on construction; the spectral decomposition is computed once
/// and kept alongside the matrix.
template <typename Real = double>
class DensityOperator {
 public:
  explicit DensityOperator(CMatrix<Real> m, const Tolerances<Real>& tol = {})
      : matrix_(std::move(m)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
      throw Error(Errc::NotSquare, "density operator must be square");
    if (!matrix_.allFinite())
      throw Error(Errc::InvalidDensity, "non-finite entry");
    if (!is_hermitian(matrix_, tol.equal_tol))
      throw Error(Errc::NotHermitian, "density operator must be Hermitian");
    matrix_ = (matrix_ + matrix_.adjoint()).eval() / Real(2);
    spectrum_ = hermitian_eig(matrix_, tol);
    if (spectrum_.values(spectrum_.values.size() - 1) < -tol.eig_zero)
      throw Error(Errc::InvalidDensity, "negative eigenvalue");
    if (std::abs(matrix_.trace() - Complex<Real>(1)) > tol.equal_tol)
      throw Error(Errc::InvalidDensity, "trace differs from one");
  }

  /// Pure state |v><v| for a normalized vector.
  static DensityOperator pure(const CVector<Real>& v,
                              const Tolerances<Real>& tol = {}) {
    if (std::abs(v.norm() - Real(1)) > tol.equal_tol)
      throw Error(Errc::NotNormalized, "pure state vector must be normalized");
    return DensityOperator(projector<Real>(v), tol);
  }

  static DensityOperator maximally_mixed(Eigen::Index dim) {
    return DensityOperator(identity<Real>(dim) / Real(dim));
  }

  const CMatrix<Real>& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const RVector<Real>& eigenvalues() const { return spectrum_.values; }
  const CMatrix<Real>& eigenvectors() const { return spectrum_.vectors; }

 private:
  CMatrix<Real> matrix_;
  HermitianEig<Real> spectrum_;
};

/// Subspace given by an orthonormal-column basis (possibly with no columns).
template <typename Real = double>
class Subspace {
 public:
  Subspace(Eigen::Index ambient_dim, CMatrix<Real> basis,
           const Tolerances<Real>& tol = {})
      : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
    if (basis_.cols() == 0) basis_.resize(ambient_dim_, 0);
    if (basis_.rows() != ambient_dim_ || basis_.cols() > ambient_dim_)
      throw Error(Errc::DimensionMismatch, "basis shape disagrees with ambient dimension");
    if (!has_orthonormal_columns(basis_, tol.equal_tol))
      throw Error(Errc::NotNormalized, "subspace basis must be orthonormal");
  }

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  Eigen::Index rank() const { return basis_.cols(); }
  const CMatrix<Real>& basis() const { return basis_; }
  CMatrix<Real> projector() const { return basis_ * basis_.adjoint(); }

 private:
  Eigen::Index ambient_dim_;
  CMatrix<Real> basis_;
};

template <typename Real>
void require_same_dim(const DensityOperator<Real>& a,
                      const DensityOperator<Real>& b) {
  if (a.dim() != b.dim())
    throw Error(Errc::DimensionMismatch, "states act on different dimensions");
}

/// Span of the eigenvectors with eigenvalue above `eig_zero`.
template <typename Real>
Subspace<Real> support(const DensityOperator<Real>& rho,
                       const Tolerances<Real>& tol = {}) {
  Eigen::Index rank = 0;
  const auto& vals = rho.eigenvalues();
  while (rank < vals.size() && vals(rank) > tol.eig_zero) ++rank;
  return Subspace<Real>(rho.dim(), rho.eigenvectors().leftCols(rank), tol);
}

template <typename Real>
Eigen::Index numerical_rank(const DensityOperator<Real>& rho,
                            const Tolerances<Real>& tol = {}) {
  return support(rho, tol).rank();
}

/// Whether |phi><phi| can appear in an ensemble for rho, i.e. phi lies in
/// the support of rho up to a residual of sqrt(eig_zero).
template <typename Real>
bool in_Q(const DensityOperator<Real>& rho, const CVector<Real>& phi,
          const Tolerances<Real>& tol = {}) {
  if (phi.size() != rho.dim())
    throw Error(Errc::DimensionMismatch, "vector and state dimensions differ");
  if (std::abs(phi.norm() - Real(1)) > tol.equal_tol)
    throw Error(Errc::NotNormalized, "phi must be normalized");
  const auto s = support(rho, tol);
  const CVector<Real> residual = phi - s.basis() * (s.basis().adjoint() * phi);
  return residual.norm() <= std::sqrt(tol.eig_zero);
}

/// tr(rho^2), evaluated from the cached spectrum.
template <typename Real>
Real purity(const DensityOperator<Real>& rho) {
  return rho.eigenvalues().squaredNorm();
}

/// tr(m^2) for a Hermitian matrix that need not be a valid state.
template <typename Real>
Real purity(const CMatrix<Real>& m) {
  return (m * m).trace().real();
}

/// Half the trace norm of a - b for Hermitian matrices.
template <typename Real>
Real trace_distance(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, "trace_distance: shapes differ");
  const CMatrix<Real> diff = ((a - b) + (a - b).adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(diff,
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum() / Real(2);
}

template <typename Real>
Real trace_distance(const DensityOperator<Real>& a,
                    const DensityOperator<Real>& b) {
  require_same_dim(a, b);
  return trace_distance(a.matrix(), b.matrix());
}

template <typename Real>
bool is_orthogonal(const DensityOperator<Real>& a,
                   const DensityOperator<Real>& b,
                   const Tolerances<Real>& tol = {}) {
  require_same_dim(a, b);
  return (a.matrix() * b.matrix()).trace().real() <= tol.eig_zero;
}

template <typename Real>
DensityOperator<Real> tensor(const DensityOperator<Real>& a,
                             const DensityOperator<Real>& b) {
  return DensityOperator<Real>(tensor(a.matrix(), b.matrix()));
}

/// Ginibre-ensemble state G G^dagger / tr(G G^dagger) with G of shape
/// dim x rank, drawn row-major from a seeded xoshiro256** stream.
template <typename Real = double>
DensityOperator<Real> random_density(Eigen::Index dim, Eigen::Index rank,
                                     Xoshiro256& rng) {
  if (dim < 1 || rank < 1 || rank > dim)
    throw Error(Errc::InvalidRank, "need 1 <= rank <= dim");
  const CMatrix<Real> g = ginibre<Real>(dim, rank, rng);
  CMatrix<Real> m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator<Real>(m);
}

template <typename Real = double>
DensityOperator<Real> random_density(Eigen::Index dim, Eigen::Index rank,
                                     std::uint64_t seed) {
  Xoshiro256 rng(seed);
  return random_density<Real>(dim, rank, rng);
}

template <typename Real = double>
DensityOperator<Real> random_pure(Eigen::Index dim, Xoshiro256& rng) {
  return DensityOperator<Real>::pure(random_unit_vector<Real>(dim, rng));
}

}  // namespace qpure

#endif  // QPURE_STATES_HPP
