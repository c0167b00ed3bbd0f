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

#ifndef QPURE_PURIFY_HPP
#define QPURE_PURIFY_HPP

#include <numbers>

#include "qpure/channels.hpp"
#include "qpure/geometry.hpp"
#include "qpure/matcore.hpp"
#include "qpure/states.hpp"

namespace qpure {

/// Orthonormal frame of the plane spanned by two unit vectors.
///
/// `second` is psi2 with its global phase gauged so that <first|second> is
/// real and non-negative; `perp` completes `first` to an orthonormal basis
/// of the plane with <perp|second> = sin(theta) > 0.
template <typename Real>
struct PlaneFrame {
  CVector<Real> first;
  CVector<Real> second;
  CVector<Real> perp;
  Real theta = Real(0);  // sin(theta) is the pure-state trace distance
};

template <typename Real>
PlaneFrame<Real> plane_frame(const CVector<Real>& psi1, const CVector<Real>& psi2,
                             const Tolerances<Real>& tol = {}) {
  if (psi1.size() != psi2.size())
    throw Error(Errc::DimensionMismatch, "vectors have different dimensions");
  if (std::abs(psi1.norm() - Real(1)) > tol.equal_tol ||
      std::abs(psi2.norm() - Real(1)) > tol.equal_tol)
    throw Error(Errc::NotNormalized, "plane_frame needs unit vectors");
  PlaneFrame<Real> f;
  f.first = psi1;
  const Complex<Real> overlap = psi1.dot(psi2);
  const Real c = std::abs(overlap);
  f.second = c > Real(0) ? CVector<Real>(psi2 * (std::conj(overlap) / c)) : psi2;
  const CVector<Real> r = f.second - f.first * c;
  const Real s = r.norm();
  if (s <= tol.equal_tol)
    throw Error(Errc::CollinearInputs, "vectors coincide up to phase");
  f.perp = r / s;
  f.theta = std::atan2(s, c);
  return f;
}

namespace detail {

// The two plane-local Kraus operators contracting the angle theta of `f`
// down to phi: A1 = P_first + a P_perp, A2 = (sqrt(1-b^2)|first> +
// sqrt(b^2-a^2)|perp>)<perp| with a = tan(phi)/tan(theta), b =
// sin(phi)/sin(theta).
template <typename Real>
std::pair<CMatrix<Real>, CMatrix<Real>> contraction_pair(const PlaneFrame<Real>& f,
                                                         Real phi) {
  const Real theta = f.theta;
  Real a = Real(1);
  Real b = Real(1);
  if (phi < theta) {
    a = std::sin(phi) * std::cos(theta) / (std::cos(phi) * std::sin(theta));
    b = std::sin(phi) / std::sin(theta);
  }
  a = std::clamp(a, Real(0), Real(1));
  b = std::clamp(b, a, Real(1));
  const CMatrix<Real> a1 = projector<Real>(f.first) + a * projector<Real>(f.perp);
  const CVector<Real> target =
      std::sqrt(Real(1) - b * b) * f.first + std::sqrt(b * b - a * a) * f.perp;
  const CMatrix<Real> a2 = target * f.perp.adjoint();
  return {a1, a2};
}

}  // namespace detail

/// Angle-reducing channel on the pair (psi1, psi2).
///
/// Both inputs stay pure; psi1 is a fixed point and psi2 is rotated to
/// cos(phi)|psi1> + sin(phi)|perp>, so the output trace distance is sin(phi).
/// Requires 0 <= phi <= theta where sin(theta) is the input distance.
template <typename Real>
KrausChannel<Real> omega_phi(const CVector<Real>& psi1, const CVector<Real>& psi2,
                             Real phi, const Tolerances<Real>& tol = {}) {
  const auto f = plane_frame(psi1, psi2, tol);
  if (!(phi >= Real(0)) || phi > f.theta + tol.equal_tol)
    throw Error(Errc::AngleOutOfRange, "phi must lie in [0, theta]");
  auto [a1, a2] = detail::contraction_pair(f, std::min(phi, f.theta));
  const Eigen::Index n = psi1.size();
  CMatrix<Real> a3 = identity<Real>(n) - projector<Real>(f.first) -
                     projector<Real>(f.perp);
  return KrausChannel<Real>(n, n, {std::move(a1), std::move(a2), std::move(a3)});
}

/// Contraction that brings a pure pair at distance D down to
/// `target_distance` <= D, i.e. omega_phi with sin(phi) = target.
template <typename Real>
KrausChannel<Real> mimic(const CVector<Real>& psi1, const CVector<Real>& psi2,
                         Real target_distance, const Tolerances<Real>& tol = {}) {
  const auto f = plane_frame(psi1, psi2, tol);
  const Real current = std::sin(f.theta);
  if (target_distance > current + tol.equal_tol)
    throw Error(Errc::TargetTooLarge, "target distance exceeds the current one");
  if (!(target_distance >= Real(0)))
    throw Error(Errc::AngleOutOfRange, "target distance must be non-negative");
  const Real phi = target_distance >= current
                       ? f.theta
                       : std::asin(std::min(target_distance, Real(1)));
  return omega_phi(psi1, psi2, phi, tol);
}

/// The optimal two-state purifier and its building blocks.
///
/// `full` = tr_in o e_tilde o omega_tilde maps rho_i to |phi_i><phi_i| on
/// the auxiliary space, and |<phi1|phi2>| = cos(phi) with sin(phi) = wcd.
template <typename Real = double>
struct PurifierBundle {
  KrausChannel<Real> omega_tilde;
  KrausChannel<Real> e_tilde;
  KrausChannel<Real> full;
  CVector<Real> phi1;
  CVector<Real> phi2;
  Real achieved_distance;
  Eigen::Index aux_dim;
  JordanDecomposition<Real> jordan;
  // Per Jordan pair: images of the two Jordan vectors under omega_tilde.
  std::vector<CVector<Real>> reduced1;
  std::vector<CVector<Real>> reduced2;
};

/// Builds the purifying channel whose output distance equals wcd(rho1,
/// rho2), the largest possible for a map that purifies both states.
///
/// Each Jordan pair is contracted to angle asin(wcd) by a plane-local
/// omega_phi; A_3 projects onto everything outside the Jordan planes. The
/// relabeling isometry e_tilde then sends the k-th reduced pair to
/// |k>|phi1>, |k>|phi2>, leftover support vectors of the larger-rank state
/// to |k>|phi_i>, and an orthonormal completion of the rest to fresh levels
/// |l>|phi1>. How e_tilde acts off the handled vectors is a free choice;
/// only its action on the two supports matters.
///
/// Overlapping supports (wcd = 0) give the constant channel onto |phi1>.
template <typename Real>
PurifierBundle<Real> optimal_purifier(const DensityOperator<Real>& rho1,
                                      const DensityOperator<Real>& rho2,
                                      const Tolerances<Real>& tol = {}) {
  require_same_dim(rho1, rho2);
  const Eigen::Index n = rho1.dim();
  const Eigen::Index aux = n;
  auto jd = jordan(rho1, rho2, tol);
  const CVector<Real> phi1 = basis_vector<Real>(aux, 0);

  if (supports_overlap(jd, tol)) {
    const CMatrix<Real> w = tensor(identity<Real>(n), CMatrix<Real>(phi1));
    KrausChannel<Real> e_tilde(n, n * aux, {w});
    return PurifierBundle<Real>{identity_channel<Real>(n),
                                std::move(e_tilde),
                                constant_channel<Real>(n, phi1),
                                phi1,
                                phi1,
                                Real(0),
                                aux,
                                std::move(jd),
                                {},
                                {}};
  }

  const Eigen::Index m = jd.size();
  const Real c0 = jd.cosines(0);
  const Real w0 = wcd(jd, tol);
  const Real phi = std::atan2(w0, c0);
  CVector<Real> phi2 = CVector<Real>::Zero(aux);
  phi2(0) = c0;
  phi2(1) = w0;

  std::vector<CMatrix<Real>> kraus;
  std::vector<PlaneFrame<Real>> frames;
  std::vector<CVector<Real>> reduced1, reduced2;
  CMatrix<Real> a3 = identity<Real>(n);
  for (Eigen::Index k = 0; k < m; ++k) {
    auto f = plane_frame<Real>(jd.basis1.col(k), jd.basis2.col(k), tol);
    auto [a1, a2] = detail::contraction_pair(f, std::min(phi, f.theta));
    kraus.push_back(std::move(a1));
    kraus.push_back(std::move(a2));
    a3 -= projector<Real>(f.first) + projector<Real>(f.perp);
    reduced1.push_back(f.first);
    reduced2.push_back(std::cos(phi) * f.first + std::sin(phi) * f.perp);
    frames.push_back(std::move(f));
  }
  kraus.push_back(a3);
  KrausChannel<Real> omega_tilde(n, n, std::move(kraus));

  const CVector<Real> e1 = basis_vector<Real>(aux, 1);
  auto level = [&](Eigen::Index k, const CVector<Real>& a) {
    return CVector<Real>(tensor(CMatrix<Real>(basis_vector<Real>(n, k)),
                                CMatrix<Real>(a)));
  };
  CMatrix<Real> w = CMatrix<Real>::Zero(n * aux, n);
  CMatrix<Real> handled(n, 0);
  auto add = [&](const CVector<Real>& image, const CVector<Real>& source) {
    w += image * source.adjoint();
    handled.conservativeResize(Eigen::NoChange, handled.cols() + 1);
    handled.col(handled.cols() - 1) = source;
  };
  for (Eigen::Index k = 0; k < m; ++k) {
    add(level(k, phi1), frames[std::size_t(k)].first);
    add(level(k, e1), frames[std::size_t(k)].perp);
  }
  for (Eigen::Index j = 0; j < jd.leftover1.cols(); ++j)
    add(level(m + j, phi1), jd.leftover1.col(j));
  for (Eigen::Index j = 0; j < jd.leftover2.cols(); ++j)
    add(level(m + j, phi2), jd.leftover2.col(j));
  const Eigen::Index used = m + std::max(jd.leftover1.cols(), jd.leftover2.cols());
  const CMatrix<Real> rest = orthogonal_complement<Real>(handled, tol);
  for (Eigen::Index t = 0; t < rest.cols(); ++t)
    w += level(used + t, phi1) * rest.col(t).adjoint();
  KrausChannel<Real> e_tilde(n, n * aux, {w});

  auto full = compose(partial_trace_channel<Real>(n, aux, Keep::Second),
                      compose(e_tilde, omega_tilde));
  return PurifierBundle<Real>{std::move(omega_tilde),
                              std::move(e_tilde),
                              std::move(full),
                              phi1,
                              std::move(phi2),
                              std::sin(phi),
                              aux,
                              std::move(jd),
                              std::move(reduced1),
                              std::move(reduced2)};
}

template <typename Real = double>
struct HelstromChannel {
  KrausChannel<Real> channel;  // dim_out 2: |0> guesses sigma1, |1> sigma2
  Real q1;
  Real q2;
};

/// Measure-and-prepare channel for the Helstrom measurement: E projects on
/// the non-negative eigenspace of sigma1 - sigma2; outcome E emits |0>,
/// outcome 1 - E emits |1>. q1 = tr(E sigma1), q2 = tr((1-E) sigma2) and
/// q1 + q2 = 1 + D(sigma1, sigma2).
template <typename Real>
HelstromChannel<Real> helstrom_channel(const DensityOperator<Real>& sigma1,
                                       const DensityOperator<Real>& sigma2,
                                       const Tolerances<Real>& tol = {}) {
  require_same_dim(sigma1, sigma2);
  const Eigen::Index n = sigma1.dim();
  const auto eig = hermitian_eig(CMatrix<Real>(sigma1.matrix() - sigma2.matrix()), tol);
  std::vector<CMatrix<Real>> ks;
  CMatrix<Real> e = CMatrix<Real>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const CVector<Real> v = eig.vectors.col(j);
    const bool positive = eig.values(j) >= Real(0);
    if (positive) e += projector<Real>(v);
    ks.push_back(basis_vector<Real>(2, positive ? 0 : 1) * v.adjoint());
  }
  const Real q1 = (e * sigma1.matrix()).trace().real();
  const Real q2 = ((identity<Real>(n) - e) * sigma2.matrix()).trace().real();
  return {KrausChannel<Real>(n, 2, std::move(ks)), q1, q2};
}

template <typename Real = double>
struct ProductBound {
  Real lhs;  // D(rho1 (x) sigma1, rho2 (x) sigma2)^2
  Real rhs;  // 1 - (1 - wcd(rho1, rho2)^2)(1 - D(sigma1, sigma2)^2)
  bool holds(Real slack = Real(1e-9)) const { return lhs >= rhs - slack; }
};

/// Lower bound on the trace distance of two product states.
template <typename Real>
ProductBound<Real> product_bound(const DensityOperator<Real>& rho1,
                                 const DensityOperator<Real>& rho2,
                                 const DensityOperator<Real>& sigma1,
                                 const DensityOperator<Real>& sigma2,
                                 const Tolerances<Real>& tol = {}) {
  require_same_dim(rho1, rho2);
  require_same_dim(sigma1, sigma2);
  const Real d = trace_distance(CMatrix<Real>(tensor(rho1.matrix(), sigma1.matrix())),
                                CMatrix<Real>(tensor(rho2.matrix(), sigma2.matrix())));
  const Real w = wcd(rho1, rho2, tol);
  const Real ds = trace_distance(sigma1, sigma2);
  return {d * d, Real(1) - (Real(1) - w * w) * (Real(1) - ds * ds)};
}

}  // namespace qpure

#endif  // QPURE_PURIFY_HPP
