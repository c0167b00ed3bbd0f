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

#ifndef QPURE_MATCORE_HPP
#define QPURE_MATCORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace qpure {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

enum class Errc {
  NotSquare,
  NotHermitian,
  NotUnitary,
  NotNormalized,
  NotTracePreserving,
  InvalidDensity,
  InvalidRank,
  InvalidTolerance,
  DimensionMismatch,
  ShapeMismatch,
  EmptySubspace,
  AngleOutOfRange,
  CollinearInputs,
  TargetTooLarge,
  RecipeInconsistent,
  TooFewStates,
  POutOfRange,
  NotFeasible,
  Unsupported,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NotTracePreserving: return "NotTracePreserving";
    case Errc::InvalidDensity: return "InvalidDensity";
    case Errc::InvalidRank: return "InvalidRank";
    case Errc::InvalidTolerance: return "InvalidTolerance";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::EmptySubspace: return "EmptySubspace";
    case Errc::AngleOutOfRange: return "AngleOutOfRange";
    case Errc::CollinearInputs: return "CollinearInputs";
    case Errc::TargetTooLarge: return "TargetTooLarge";
    case Errc::RecipeInconsistent: return "RecipeInconsistent";
    case Errc::TooFewStates: return "TooFewStates";
    case Errc::POutOfRange: return "POutOfRange";
    case Errc::NotFeasible: return "NotFeasible";
    case Errc::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

/// Exception carrying one of the library error codes.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Numerical thresholds shared by every operation.
///
/// `eig_zero` decides numerical rank and supports, `cptp_tol` bounds the
/// deviation of a Kraus completeness sum, and `equal_tol` is the matrix
/// equality threshold in the max-entry-modulus norm.
template <typename Real = double>
struct Tolerances {
  Real eig_zero = Real(1e-9);
  Real cptp_tol = Real(1e-8);
  Real equal_tol = Real(1e-9);

  void check() const {
    auto in_range = [](Real v) { return v >= Real(0) && v <= Real(1e-4); };
    if (!in_range(eig_zero) || !in_range(cptp_tol) || !in_range(equal_tol))
      throw Error(Errc::InvalidTolerance, "tolerances must lie in [0, 1e-4]");
  }
};

// ---------------------------------------------------------------------------
// Small helpers

template <typename Real = double>
CMatrix<Real> identity(Eigen::Index n) {
  return CMatrix<Real>::Identity(n, n);
}

template <typename Real = double>
CVector<Real> basis_vector(Eigen::Index dim, Eigen::Index k) {
  CVector<Real> v = CVector<Real>::Zero(dim);
  v(k) = Real(1);
  return v;
}

template <typename Real = double>
CMatrix<Real> diag(std::initializer_list<Real> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  CMatrix<Real> m = CMatrix<Real>::Zero(n, n);
  Eigen::Index i = 0;
  for (Real v : values) m(i, i) = v, ++i;
  return m;
}

template <typename Real>
CMatrix<Real> projector(const CVector<Real>& v) {
  return v * v.adjoint();
}

/// Max-entry-modulus distance.
template <typename DerivedA, typename DerivedB>
auto max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                  const Eigen::MatrixBase<DerivedB>& b) {
  using Real = typename Eigen::NumTraits<typename DerivedA::Scalar>::Real;
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, "max_abs_diff: shapes differ");
  if (a.size() == 0) return Real(0);
  return Real((a - b).cwiseAbs().maxCoeff());
}

template <typename Real>
bool is_finite(const CMatrix<Real>& m) {
  return m.allFinite();
}

template <typename Real>
bool is_hermitian(const CMatrix<Real>& m, Real tol) {
  return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tol;
}

template <typename Real>
bool is_unitary(const CMatrix<Real>& u, Real tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs_diff(u.adjoint() * u, identity<Real>(u.cols())) <= tol;
}

/// True when the columns of `m` are orthonormal.
template <typename Real>
bool has_orthonormal_columns(const CMatrix<Real>& m, Real tol) {
  return max_abs_diff(m.adjoint() * m, identity<Real>(m.cols())) <= tol;
}

template <typename Real>
Complex<Real> trace(const CMatrix<Real>& m) {
  return m.trace();
}

namespace detail {

template <typename Real>
constexpr Real lex_tol() {
  return Real(64) * std::numeric_limits<Real>::epsilon();
}

// Rotates a column so its largest-modulus entry is real and non-negative.
// Returns the applied phase factor.
template <typename Real, typename Col>
Complex<Real> phase_normalize(Col&& col) {
  Eigen::Index best = 0;
  Real best_abs = Real(-1);
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    const Real a = std::abs(col(i));
    if (a > best_abs + lex_tol<Real>()) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= Real(0)) return Complex<Real>(1);
  const Complex<Real> phase = std::conj(col(best)) / best_abs;
  col *= phase;
  col(best) = Complex<Real>(std::abs(col(best)), Real(0));
  return phase;
}

template <typename Real>
bool lex_less(const CVector<Real>& a, const CVector<Real>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Real t = lex_tol<Real>();
    if (a(i).real() < b(i).real() - t) return true;
    if (a(i).real() > b(i).real() + t) return false;
    if (a(i).imag() < b(i).imag() - t) return true;
    if (a(i).imag() > b(i).imag() + t) return false;
  }
  return false;
}

// Contiguous runs [first, last) of (descending) values that agree within tol.
template <typename Real>
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(
    const RVector<Real>& values, Real tol) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= values.size(); ++i) {
    if (i == values.size() || std::abs(values(i) - values(i - 1)) > tol) {
      out.emplace_back(start, i);
      start = i;
    }
  }
  return out;
}

// Replaces an orthonormal block spanning an invariant subspace by a basis
// that depends only on the subspace: pivoted Gram-Schmidt on the columns of
// its projector, then phase normalization and descending lexicographic
// order (so e_0 precedes e_1).
template <typename Real>
CMatrix<Real> canonical_basis(const CMatrix<Real>& block) {
  const Eigen::Index n = block.rows();
  const Eigen::Index k = block.cols();
  const CMatrix<Real> proj = block * block.adjoint();
  CMatrix<Real> residual = proj;
  std::vector<CVector<Real>> chosen;
  for (Eigen::Index step = 0; step < k; ++step) {
    Eigen::Index pivot = 0;
    Real best = Real(-1);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Real nrm = residual.col(j).norm();
      if (nrm > best + lex_tol<Real>()) {
        best = nrm;
        pivot = j;
      }
    }
    CVector<Real> v = residual.col(pivot) / best;
    // Second orthogonalization pass against the chosen vectors.
    for (const auto& c : chosen) v -= c * c.dot(v);
    v.normalize();
    chosen.push_back(v);
    residual -= v * (v.adjoint() * residual);
  }
  for (auto& v : chosen) phase_normalize<Real>(v);
  std::stable_sort(chosen.begin(), chosen.end(),
                   [](const CVector<Real>& a, const CVector<Real>& b) { return lex_less<Real>(b, a); });
  CMatrix<Real> out(n, k);
  for (Eigen::Index j = 0; j < k; ++j) out.col(j) = chosen[std::size_t(j)];
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Decompositions

template <typename Real>
struct HermitianEig {
  RVector<Real> values;   // descending
  CMatrix<Real> vectors;  // orthonormal columns, one per value
};

/// Spectral decomposition of a Hermitian matrix, eigenvalues descending.
///
/// Eigenvectors are phase-normalized (largest-modulus entry real and
/// non-negative). Inside a degenerate cluster (values within `equal_tol`) the
/// basis is replaced by a canonical one ordered lexicographically, so the
/// output does not depend on the solver's internal choice.
template <typename Real>
HermitianEig<Real> hermitian_eig(const CMatrix<Real>& m,
                                 const Tolerances<Real>& tol = {}) {
  if (m.rows() != m.cols())
    throw Error(Errc::NotSquare, "hermitian_eig needs a square matrix");
  if (!is_hermitian(m, tol.equal_tol))
    throw Error(Errc::NotHermitian, "hermitian_eig needs a Hermitian matrix");
  const CMatrix<Real> h = (m + m.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(h);
  HermitianEig<Real> out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  for (auto [first, last] : detail::clusters(out.values, tol.equal_tol)) {
    const Eigen::Index len = last - first;
    if (len == 1) {
      detail::phase_normalize<Real>(out.vectors.col(first));
    } else {
      out.vectors.middleCols(first, len) =
          detail::canonical_basis<Real>(out.vectors.middleCols(first, len));
    }
  }
  return out;
}

template <typename Real>
struct Svd {
  CMatrix<Real> left;
  RVector<Real> singular_values;  // descending, non-negative
  CMatrix<Real> right;
};

enum class SvdMode { Thin, Full };

/// Singular value decomposition m = left * diag(s) * right^dagger.
///
/// Thin mode returns min(rows, cols) columns in each factor. Full mode
/// returns square unitary factors whose trailing columns span the left and
/// right null spaces. Each singular pair is phase-normalized on the right
/// vector; pairs with equal singular values are ordered by descending
/// lexicographic order of their right vectors.
template <typename Real>
Svd<Real> svd(const CMatrix<Real>& m, SvdMode mode = SvdMode::Thin) {
  const unsigned opts = mode == SvdMode::Full
                            ? (Eigen::ComputeFullU | Eigen::ComputeFullV)
                            : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::JacobiSVD<CMatrix<Real>> solver(m, opts);
  Svd<Real> out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  const Eigen::Index k = out.singular_values.size();
  for (Eigen::Index j = 0; j < out.left.cols(); ++j) {
    if (j < k && out.singular_values(j) > Real(0)) {
      auto phase = detail::phase_normalize<Real>(out.right.col(j));
      out.left.col(j) *= phase;
    } else {
      detail::phase_normalize<Real>(out.left.col(j));
    }
  }
  for (Eigen::Index j = k; j < out.right.cols(); ++j)
    detail::phase_normalize<Real>(out.right.col(j));

  // Reorder equal singular values by their right vectors.
  const Real tie = Real(16) * std::numeric_limits<Real>::epsilon() *
                   std::max(Real(1), k > 0 ? out.singular_values(0) : Real(1));
  for (auto [first, last] : detail::clusters(out.singular_values, tie)) {
    if (last - first < 2) continue;
    std::vector<Eigen::Index> idx(std::size_t(last - first));
    std::iota(idx.begin(), idx.end(), first);
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
      return detail::lex_less<Real>(out.right.col(b), out.right.col(a));
    });
    CMatrix<Real> l = out.left.middleCols(first, last - first);
    CMatrix<Real> r = out.right.middleCols(first, last - first);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      out.left.col(first + Eigen::Index(j)) = l.col(idx[j] - first);
      out.right.col(first + Eigen::Index(j)) = r.col(idx[j] - first);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tensor structure

/// Kronecker product; index (i_A, i_B) maps to i_A * dim_B + i_B.
template <typename DerivedA, typename DerivedB>
auto tensor(const Eigen::MatrixBase<DerivedA>& a,
            const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::kroneckerProduct(a.eval(), b.eval());
  return out;
}

enum class Keep { First, Second };

/// Partial trace of an operator on A (x) B.
template <typename Real>
CMatrix<Real> partial_trace(const CMatrix<Real>& m, Eigen::Index dim_a,
                            Eigen::Index dim_b, Keep keep) {
  if (m.rows() != m.cols() || m.rows() != dim_a * dim_b)
    throw Error(Errc::DimensionMismatch,
                "partial_trace: operator side must equal dim_a * dim_b");
  if (keep == Keep::First) {
    CMatrix<Real> out = CMatrix<Real>::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
      for (Eigen::Index j = 0; j < dim_a; ++j)
        out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
  }
  CMatrix<Real> out = CMatrix<Real>::Zero(dim_b, dim_b);
  for (Eigen::Index k = 0; k < dim_a; ++k)
    out += m.block(k * dim_b, k * dim_b, dim_b, dim_b);
  return out;
}

/// Orthonormal basis of the range of a positive semidefinite operator,
/// keeping eigenvectors whose eigenvalue exceeds `threshold`.
template <typename Real>
CMatrix<Real> psd_range(const CMatrix<Real>& m, Real threshold,
                        const Tolerances<Real>& tol = {}) {
  const auto eig = hermitian_eig(m, tol);
  Eigen::Index rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > threshold) ++rank;
  return eig.vectors.leftCols(rank);
}

/// Orthonormal basis of the orthogonal complement of span(columns of `m`),
/// where `m` has orthonormal columns.
template <typename Real>
CMatrix<Real> orthogonal_complement(const CMatrix<Real>& m,
                                    const Tolerances<Real>& tol = {}) {
  const Eigen::Index n = m.rows();
  const CMatrix<Real> rest = identity<Real>(n) - m * m.adjoint();
  return psd_range<Real>(rest, Real(0.5), tol);
}

}  // namespace qpure

#endif  // QPURE_MATCORE_HPP
