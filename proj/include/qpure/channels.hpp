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

#ifndef QPURE_CHANNELS_HPP
#define QPURE_CHANNELS_HPP

#include <type_traits>
#include <vector>

#include "qpure/matcore.hpp"
#include "qpure/states.hpp"

namespace qpure {

/// Channel in Kraus form, chi -> sum_a A_a chi A_a^dagger.
///
/// The constructor checks shapes only. Completeness is checked by
/// `validate`, so that invalid lists coming from files can still be held and
/// reported on.
template <typename Real = double>
class KrausChannel {
 public:
  KrausChannel(Eigen::Index dim_in, Eigen::Index dim_out,
               std::vector<CMatrix<Real>> kraus, bool trace_preserving = true)
      : dim_in_(dim_in),
        dim_out_(dim_out),
        kraus_(std::move(kraus)),
        trace_preserving_(trace_preserving) {
    if (dim_in_ < 1 || dim_out_ < 1)
      throw Error(Errc::ShapeMismatch, "channel dimensions must be positive");
    if (kraus_.empty())
      throw Error(Errc::ShapeMismatch, "channel needs at least one Kraus operator");
    for (const auto& k : kraus_)
      if (k.rows() != dim_out_ || k.cols() != dim_in_)
        throw Error(Errc::ShapeMismatch, "Kraus operator shape must be dim_out x dim_in");
  }

  Eigen::Index dim_in() const { return dim_in_; }
  Eigen::Index dim_out() const { return dim_out_; }
  const std::vector<CMatrix<Real>>& kraus() const { return kraus_; }
  bool trace_preserving() const { return trace_preserving_; }

  /// sum_a A_a^dagger A_a
  CMatrix<Real> completeness() const {
    CMatrix<Real> s = CMatrix<Real>::Zero(dim_in_, dim_in_);
    for (const auto& k : kraus_) s.noalias() += k.adjoint() * k;
    return s;
  }

 private:
  Eigen::Index dim_in_;
  Eigen::Index dim_out_;
  std::vector<CMatrix<Real>> kraus_;
  bool trace_preserving_;
};

template <typename Real>
struct ValidationReport {
  bool ok = false;
  Real deviation = Real(0);
};

/// Checks the completeness relation. For trace-preserving channels the
/// deviation is max|S - 1| entrywise; otherwise it is how far the largest
/// eigenvalue of S exceeds one.
template <typename Real>
ValidationReport<Real> validate(const KrausChannel<Real>& ch,
                                const Tolerances<Real>& tol = {}) {
  for (const auto& k : ch.kraus())
    if (k.rows() != ch.dim_out() || k.cols() != ch.dim_in())
      throw Error(Errc::ShapeMismatch, "Kraus operator shape mismatch");
  const CMatrix<Real> s = ch.completeness();
  ValidationReport<Real> rep;
  if (!s.allFinite()) return rep;
  if (ch.trace_preserving()) {
    rep.deviation = max_abs_diff(s, identity<Real>(ch.dim_in()));
  } else {
    const CMatrix<Real> h = (s + s.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(h, Eigen::EigenvaluesOnly);
    rep.deviation = std::max(Real(0), solver.eigenvalues().maxCoeff() - Real(1));
  }
  rep.ok = rep.deviation <= tol.cptp_tol;
  return rep;
}

/// Takes any Eigen matrix expression. The forwarding signature keeps this
/// overload ahead of std::apply, which ADL finds through std::complex.
template <typename Real, typename M>
  requires std::is_base_of_v<Eigen::MatrixBase<std::remove_cvref_t<M>>, std::remove_cvref_t<M>>
CMatrix<Real> apply(const KrausChannel<Real>& ch, M&& expr) {
  const CMatrix<Real> x = expr;
  if (x.rows() != ch.dim_in() || x.cols() != ch.dim_in())
    throw Error(Errc::DimensionMismatch, "input dimension differs from channel dim_in");
  CMatrix<Real> out = CMatrix<Real>::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& k : ch.kraus()) out.noalias() += k * x * k.adjoint();
  return out;
}

/// Output is Hermitized to remove roundoff asymmetry.
template <typename Real>
CMatrix<Real> apply(const KrausChannel<Real>& ch,
                    const DensityOperator<Real>& rho) {
  const CMatrix<Real> out = qpure::apply(ch, rho.matrix());
  return (out + out.adjoint()) / Real(2);
}

/// outer after inner: Kraus list of all products B_j A_i.
template <typename Real>
KrausChannel<Real> compose(const KrausChannel<Real>& outer,
                           const KrausChannel<Real>& inner) {
  if (inner.dim_out() != outer.dim_in())
    throw Error(Errc::DimensionMismatch, "compose: inner.dim_out != outer.dim_in");
  std::vector<CMatrix<Real>> ks;
  ks.reserve(outer.kraus().size() * inner.kraus().size());
  for (const auto& b : outer.kraus())
    for (const auto& a : inner.kraus()) ks.push_back(b * a);
  return KrausChannel<Real>(inner.dim_in(), outer.dim_out(), std::move(ks),
                            outer.trace_preserving() && inner.trace_preserving());
}

template <typename Real>
KrausChannel<Real> tensor_channels(const KrausChannel<Real>& a,
                                   const KrausChannel<Real>& b) {
  std::vector<CMatrix<Real>> ks;
  ks.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) ks.push_back(tensor(ka, kb));
  return KrausChannel<Real>(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(),
                            std::move(ks),
                            a.trace_preserving() && b.trace_preserving());
}

template <typename Real = double>
KrausChannel<Real> identity_channel(Eigen::Index dim) {
  return KrausChannel<Real>(dim, dim, {identity<Real>(dim)});
}

template <typename Real>
KrausChannel<Real> unitary_channel(const CMatrix<Real>& u,
                                   const Tolerances<Real>& tol = {}) {
  if (!is_unitary(u, tol.equal_tol))
    throw Error(Errc::NotUnitary, "unitary_channel needs a unitary matrix");
  return KrausChannel<Real>(u.cols(), u.rows(), {u});
}

/// Single-Kraus channel of an isometry (orthonormal columns).
template <typename Real>
KrausChannel<Real> isometry_channel(const CMatrix<Real>& v,
                                    const Tolerances<Real>& tol = {}) {
  if (!has_orthonormal_columns(v, tol.equal_tol))
    throw Error(Errc::NotUnitary, "isometry_channel needs orthonormal columns");
  return KrausChannel<Real>(v.cols(), v.rows(), {v});
}

/// chi -> chi (x) sigma, with Kraus operators 1 (x) sqrt(p_k)|l_k> from the
/// spectral decomposition of sigma.
template <typename Real>
KrausChannel<Real> append_channel(Eigen::Index dim_in,
                                  const DensityOperator<Real>& sigma) {
  const Eigen::Index s = sigma.dim();
  std::vector<CMatrix<Real>> ks;
  for (Eigen::Index k = 0; k < s; ++k) {
    const Real p = std::max(Real(0), sigma.eigenvalues()(k));
    const CMatrix<Real> col = sigma.eigenvectors().col(k) * std::sqrt(p);
    ks.push_back(tensor(identity<Real>(dim_in), col));
  }
  return KrausChannel<Real>(dim_in, dim_in * s, std::move(ks));
}

/// Trace over one factor of A (x) B, keeping the other.
template <typename Real = double>
KrausChannel<Real> partial_trace_channel(Eigen::Index dim_a, Eigen::Index dim_b,
                                         Keep keep) {
  std::vector<CMatrix<Real>> ks;
  if (keep == Keep::First) {
    for (Eigen::Index j = 0; j < dim_b; ++j)
      ks.push_back(tensor(identity<Real>(dim_a),
                          CMatrix<Real>(basis_vector<Real>(dim_b, j).transpose())));
    return KrausChannel<Real>(dim_a * dim_b, dim_a, std::move(ks));
  }
  for (Eigen::Index i = 0; i < dim_a; ++i)
    ks.push_back(tensor(CMatrix<Real>(basis_vector<Real>(dim_a, i).transpose()),
                        identity<Real>(dim_b)));
  return KrausChannel<Real>(dim_a * dim_b, dim_b, std::move(ks));
}

/// chi -> tr(chi) |phi><phi|, with Kraus operators |phi><j|.
template <typename Real>
KrausChannel<Real> constant_channel(Eigen::Index dim_in,
                                    const CVector<Real>& phi) {
  std::vector<CMatrix<Real>> ks;
  for (Eigen::Index j = 0; j < dim_in; ++j)
    ks.push_back(phi * basis_vector<Real>(dim_in, j).transpose());
  return KrausChannel<Real>(dim_in, phi.size(), std::move(ks));
}

/// Stinespring isometry V = sum_a A_a (x) e_a, output factor first and
/// environment (one level per Kraus operator) second.
template <typename Real>
struct Dilation {
  CMatrix<Real> isometry;
  Eigen::Index env_dim = 0;
};

template <typename Real>
Dilation<Real> stinespring(const KrausChannel<Real>& ch) {
  if (!ch.trace_preserving())
    throw Error(Errc::NotTracePreserving, "stinespring needs a trace-preserving channel");
  const auto n = static_cast<Eigen::Index>(ch.kraus().size());
  CMatrix<Real> v = CMatrix<Real>::Zero(ch.dim_out() * n, ch.dim_in());
  for (Eigen::Index a = 0; a < n; ++a)
    v += tensor(ch.kraus()[std::size_t(a)], CMatrix<Real>(basis_vector<Real>(n, a)));
  return {std::move(v), n};
}

/// chi -> V lambda[chi] V^dagger with V the Stinespring isometry of
/// lambda_prime (ancilla e_0). Tracing out the environment gives
/// lambda_prime o lambda; purity equals that of lambda's output.
template <typename Real>
KrausChannel<Real> gamma_combinator(const KrausChannel<Real>& lambda,
                                    const KrausChannel<Real>& lambda_prime) {
  if (lambda_prime.dim_in() != lambda.dim_out())
    throw Error(Errc::DimensionMismatch, "lambda_prime.dim_in != lambda.dim_out");
  const auto dil = stinespring(lambda_prime);
  std::vector<CMatrix<Real>> ks;
  ks.reserve(lambda.kraus().size());
  for (const auto& a : lambda.kraus()) ks.push_back(dil.isometry * a);
  return KrausChannel<Real>(lambda.dim_in(), dil.isometry.rows(), std::move(ks),
                            lambda.trace_preserving());
}

/// Deterministic completion of a trace-non-increasing map: the missing
/// weight tr(chi) - tr(ch[chi]) is written onto an extra flag level |?>
/// (index dim_out) orthogonal to every output of ch.
template <typename Real>
KrausChannel<Real> determinize(const KrausChannel<Real>& ch,
                               const Tolerances<Real>& tol = {}) {
  const Eigen::Index d_out = ch.dim_out() + 1;
  std::vector<CMatrix<Real>> ks;
  for (const auto& a : ch.kraus()) {
    CMatrix<Real> padded = CMatrix<Real>::Zero(d_out, ch.dim_in());
    padded.topRows(ch.dim_out()) = a;
    ks.push_back(std::move(padded));
  }
  const CMatrix<Real> defect = identity<Real>(ch.dim_in()) - ch.completeness();
  const auto eig = hermitian_eig(CMatrix<Real>((defect + defect.adjoint()) / Real(2)), tol);
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    const Real w = std::sqrt(std::max(Real(0), eig.values(j)));
    ks.push_back(basis_vector<Real>(d_out, ch.dim_out()) * w *
                 eig.vectors.col(j).adjoint());
  }
  return KrausChannel<Real>(ch.dim_in(), d_out, std::move(ks), true);
}

/// Drops Kraus operators whose Frobenius norm is at most eig_zero, keeping
/// at least one operator.
template <typename Real>
KrausChannel<Real> normal_form(const KrausChannel<Real>& ch,
                               const Tolerances<Real>& tol = {}) {
  std::vector<CMatrix<Real>> ks;
  for (const auto& k : ch.kraus())
    if (k.norm() > tol.eig_zero) ks.push_back(k);
  if (ks.empty()) ks.push_back(ch.kraus().front());
  return KrausChannel<Real>(ch.dim_in(), ch.dim_out(), std::move(ks),
                            ch.trace_preserving());
}

/// Choi matrix sum_ij |i><j| (x) ch[|i><j|].
template <typename Real>
CMatrix<Real> choi_matrix(const KrausChannel<Real>& ch) {
  const Eigen::Index n = ch.dim_in();
  const Eigen::Index m = ch.dim_out();
  CMatrix<Real> j = CMatrix<Real>::Zero(n * m, n * m);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      CMatrix<Real> e = CMatrix<Real>::Zero(n, n);
      e(a, b) = Real(1);
      j.block(a * m, b * m, m, m) = qpure::apply(ch, e);
    }
  return j;
}

/// Channel equality by action (Choi matrices), never by Kraus lists.
template <typename Real>
bool same_action(const KrausChannel<Real>& a, const KrausChannel<Real>& b,
                 const Tolerances<Real>& tol = {}) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) return false;
  return max_abs_diff(choi_matrix(a), choi_matrix(b)) <= tol.equal_tol;
}

template <typename Real>
bool acts_as_identity(const KrausChannel<Real>& ch,
                      const Tolerances<Real>& tol = {}) {
  return ch.dim_in() == ch.dim_out() &&
         same_action(ch, identity_channel<Real>(ch.dim_in()), tol);
}

}  // namespace qpure

#endif  // QPURE_CHANNELS_HPP
