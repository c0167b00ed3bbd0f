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

#ifndef QPURE_GEOMETRY_HPP
#define QPURE_GEOMETRY_HPP

#include "qpure/matcore.hpp"
#include "qpure/states.hpp"

namespace qpure {

/// Jordan (principal) bases of two subspaces.
///
/// Column k of `basis1` and `basis2` form the k-th Jordan pair with real
/// overlap cos(angles[k]); pairs with different k are orthogonal. Angles are
/// ascending and there are min(rank1, rank2) of them. The remaining basis
/// vectors of the larger subspace are in `leftover1` / `leftover2` (one of
/// the two is always empty) and are orthogonal to the whole other subspace.
template <typename Real = double>
struct JordanDecomposition {
  CMatrix<Real> basis1;
  CMatrix<Real> basis2;
  RVector<Real> angles;
  RVector<Real> cosines;  // singular values of the overlap, descending
  CMatrix<Real> leftover1;
  CMatrix<Real> leftover2;

  Eigen::Index size() const { return angles.size(); }
};

template <typename Real>
JordanDecomposition<Real> jordan(const Subspace<Real>& s1,
                                 const Subspace<Real>& s2) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw Error(Errc::DimensionMismatch, "subspaces live in different spaces");
  if (s1.rank() == 0 || s2.rank() == 0)
    throw Error(Errc::EmptySubspace, "Jordan angles need non-empty subspaces");

  const CMatrix<Real> overlap = s1.basis().adjoint() * s2.basis();
  const auto dec = svd(overlap, SvdMode::Full);
  const Eigen::Index m = std::min(s1.rank(), s2.rank());

  JordanDecomposition<Real> out;
  const CMatrix<Real> rot1 = s1.basis() * dec.left;
  const CMatrix<Real> rot2 = s2.basis() * dec.right;
  out.basis1 = rot1.leftCols(m);
  out.basis2 = rot2.leftCols(m);
  out.leftover1 = rot1.rightCols(s1.rank() - m);
  out.leftover2 = rot2.rightCols(s2.rank() - m);
  out.cosines = dec.singular_values.head(m).cwiseMax(Real(0)).cwiseMin(Real(1));
  // acos loses half the digits near zero; the sine comes from the part of
  // each second-space Jordan vector outside the first subspace instead.
  out.angles.resize(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Real sine = (out.basis2.col(k) - out.basis1.col(k) * out.cosines(k)).norm();
    out.angles(k) = std::atan2(sine, out.cosines(k));
  }
  return out;
}

/// Whether two supports share a direction: largest Jordan cosine above
/// 1 - eig_zero.
template <typename Real>
bool supports_overlap(const JordanDecomposition<Real>& j,
                      const Tolerances<Real>& tol = {}) {
  return j.cosines(0) > Real(1) - tol.eig_zero;
}

template <typename Real>
JordanDecomposition<Real> jordan(const DensityOperator<Real>& rho1,
                                 const DensityOperator<Real>& rho2,
                                 const Tolerances<Real>& tol = {}) {
  require_same_dim(rho1, rho2);
  return jordan(support(rho1, tol), support(rho2, tol));
}

/// Worst-case distinguishability from a Jordan decomposition: sine of the
/// smallest angle, or zero when the supports overlap.
template <typename Real>
Real wcd(const JordanDecomposition<Real>& j, const Tolerances<Real>& tol = {}) {
  if (supports_overlap(j, tol)) return Real(0);
  const Real c = j.cosines(0);
  return std::sqrt(std::max(Real(0), (Real(1) - c) * (Real(1) + c)));
}

template <typename Real>
Real wcd(const DensityOperator<Real>& rho1, const DensityOperator<Real>& rho2,
         const Tolerances<Real>& tol = {}) {
  return wcd(jordan(rho1, rho2, tol), tol);
}

/// Minimum-error (Helstrom) success probability for equal priors.
template <typename Real>
Real p_med(const DensityOperator<Real>& rho1, const DensityOperator<Real>& rho2) {
  return (Real(1) + trace_distance(rho1, rho2)) / Real(2);
}

/// Worst-case success probability over pure members of the two ensembles.
template <typename Real>
Real p_wcd(const DensityOperator<Real>& rho1, const DensityOperator<Real>& rho2,
           const Tolerances<Real>& tol = {}) {
  return (Real(1) + wcd(rho1, rho2, tol)) / Real(2);
}

}  // namespace qpure

#endif  // QPURE_GEOMETRY_HPP
