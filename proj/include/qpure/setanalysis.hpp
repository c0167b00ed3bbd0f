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

#ifndef QPURE_SETANALYSIS_HPP
#define QPURE_SETANALYSIS_HPP

#include <numeric>
#include <optional>
#include <vector>

#include "qpure/channels.hpp"
#include "qpure/geometry.hpp"
#include "qpure/states.hpp"

namespace qpure {

/// Non-empty collection of states of one dimension.
template <typename Real = double>
class StateSet {
 public:
  explicit StateSet(std::vector<DensityOperator<Real>> states)
      : states_(std::move(states)) {
    if (states_.empty())
      throw Error(Errc::TooFewStates, "a state set cannot be empty");
    for (const auto& s : states_) require_same_dim(s, states_.front());
  }

  std::size_t size() const { return states_.size(); }
  Eigen::Index dim() const { return states_.front().dim(); }
  const DensityOperator<Real>& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<DensityOperator<Real>>& states() const { return states_; }
  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

 private:
  std::vector<DensityOperator<Real>> states_;
};

// ---------------------------------------------------------------------------
// Orthogonal decomposition

/// Connected components of the "not orthogonal" graph, as index lists.
/// Blocks are ordered by their smallest member.
template <typename Real>
std::vector<std::vector<std::size_t>> orthogonal_blocks(
    const StateSet<Real>& ms, const Tolerances<Real>& tol = {}) {
  const std::size_t n = ms.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t(0));
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!is_orthogonal(ms[i], ms[j], tol)) {
        const auto a = find(i), b = find(j);
        parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = find(i);
    if (slot[r] == n) {
      slot[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

template <typename Real>
std::vector<StateSet<Real>> partition_orthogonal(const StateSet<Real>& ms,
                                                 const Tolerances<Real>& tol = {}) {
  std::vector<StateSet<Real>> out;
  for (const auto& block : orthogonal_blocks(ms, tol)) {
    std::vector<DensityOperator<Real>> members;
    for (auto i : block) members.push_back(ms[i]);
    out.emplace_back(std::move(members));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Essentially pure sets

/// rho (x) omega_C = U (|phi><phi| (x) sigma_B) U^dagger for every phi in
/// `pure_vectors`, with dim_in * dim_C = dim_A * dim_B.
template <typename Real = double>
struct EssentiallyPureRecipe {
  Eigen::Index dim_a;
  Eigen::Index dim_b;
  Eigen::Index dim_c;
  CMatrix<Real> u;
  DensityOperator<Real> sigma_b;
  DensityOperator<Real> omega_c;
  std::vector<CVector<Real>> pure_vectors;

  Eigen::Index dim_in() const { return dim_a * dim_b / dim_c; }

  void check(const Tolerances<Real>& tol = {}) const {
    if (dim_a < 1 || dim_b < 1 || dim_c < 1 || (dim_a * dim_b) % dim_c != 0)
      throw Error(Errc::RecipeInconsistent, "dim_A * dim_B must be a multiple of dim_C");
    if (u.rows() != dim_a * dim_b || !is_unitary(u, tol.equal_tol))
      throw Error(Errc::NotUnitary, "recipe U must be unitary on A (x) B");
    if (sigma_b.dim() != dim_b || omega_c.dim() != dim_c)
      throw Error(Errc::RecipeInconsistent, "sigma_B / omega_C dimensions");
    for (const auto& v : pure_vectors)
      if (v.size() != dim_a || std::abs(v.norm() - Real(1)) > tol.equal_tol)
        throw Error(Errc::RecipeInconsistent, "pure vectors must be unit vectors in A");
  }
};

/// States rho with rho (x) omega_C = U(|phi><phi| (x) sigma_B)U^dagger.
/// Throws RecipeInconsistent when the rotated state is not of that product
/// form.
template <typename Real>
StateSet<Real> generate_essentially_pure(const EssentiallyPureRecipe<Real>& r,
                                         const Tolerances<Real>& tol = {}) {
  r.check(tol);
  if (r.pure_vectors.empty())
    throw Error(Errc::TooFewStates, "recipe has no pure vectors");
  const Eigen::Index n = r.dim_in();
  std::vector<DensityOperator<Real>> out;
  for (const auto& v : r.pure_vectors) {
    const CMatrix<Real> x =
        r.u * tensor(projector<Real>(v), r.sigma_b.matrix()) * r.u.adjoint();
    const CMatrix<Real> rho = partial_trace(x, n, r.dim_c, Keep::First);
    if (max_abs_diff(x, tensor(rho, r.omega_c.matrix())) > tol.equal_tol)
      throw Error(Errc::RecipeInconsistent, "rotated state is not rho (x) omega_C");
    out.emplace_back(rho, tol);
  }
  return StateSet<Real>(std::move(out));
}

template <typename Real = double>
struct ReversiblePurifier {
  KrausChannel<Real> forward;  // dim_in -> dim_A, pure outputs on the set
  KrausChannel<Real> reverse;  // dim_A -> dim_in
};

/// Purifying map tr_B o E_{U^dagger} o E_{omega_C} for the recipe's set, and
/// its reverse tr_C o E_U o E_{sigma_B}.
template <typename Real>
ReversiblePurifier<Real> reversible_purifier(const EssentiallyPureRecipe<Real>& r,
                                             const Tolerances<Real>& tol = {}) {
  r.check(tol);
  const Eigen::Index n = r.dim_in();
  auto forward = compose(partial_trace_channel<Real>(r.dim_a, r.dim_b, Keep::First),
                         compose(unitary_channel<Real>(r.u.adjoint(), tol),
                                 append_channel(n, r.omega_c)));
  auto reverse = compose(partial_trace_channel<Real>(n, r.dim_c, Keep::First),
                         compose(unitary_channel<Real>(r.u, tol),
                                 append_channel(r.dim_a, r.sigma_b)));
  return {std::move(forward), std::move(reverse)};
}

/// Witness for the single-unitary form rho (x) |l0><l0| = U(rho0 (x)
/// |l><l|)U^dagger, for recipes with dim_C = 1 (state space A (x) B).
///
/// Labels are the recipe's pure vectors on an auxiliary copy of A and
/// U = (V (x) 1) S (V (x) 1)^dagger with S swapping the two copies of A.
template <typename Real = double>
struct SimplifiedWitness {
  CMatrix<Real> u;
  std::vector<CVector<Real>> labels;
};

template <typename Real>
SimplifiedWitness<Real> simplified_witness(const EssentiallyPureRecipe<Real>& r,
                                           const Tolerances<Real>& tol = {}) {
  r.check(tol);
  if (r.dim_c != 1)
    throw Error(Errc::Unsupported, "simplified_witness needs dim_C == 1");
  const Eigen::Index da = r.dim_a, db = r.dim_b;
  const Eigen::Index total = da * db * da;
  CMatrix<Real> swap = CMatrix<Real>::Zero(total, total);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < db; ++b)
      for (Eigen::Index c = 0; c < da; ++c)
        swap((c * db + b) * da + a, (a * db + b) * da + c) = Real(1);
  const CMatrix<Real> v = tensor(r.u, identity<Real>(da));
  return {v * swap * v.adjoint(), r.pure_vectors};
}

/// Checks rho (x) |l0><l0| == U (rho0 (x) |l><l|) U^dagger for every member,
/// with l0 = labels[rho0_index].
template <typename Real>
bool verify_simplified(const StateSet<Real>& ms, std::size_t rho0_index,
                       const CMatrix<Real>& u,
                       const std::vector<CVector<Real>>& labels,
                       const Tolerances<Real>& tol = {}) {
  if (labels.size() != ms.size() || rho0_index >= ms.size())
    throw Error(Errc::DimensionMismatch, "need one label per state");
  const Eigen::Index aux = labels.front().size();
  for (const auto& l : labels) {
    if (l.size() != aux)
      throw Error(Errc::DimensionMismatch, "labels have different dimensions");
    if (std::abs(l.norm() - Real(1)) > tol.equal_tol)
      throw Error(Errc::NotNormalized, "labels must be unit vectors");
  }
  if (u.rows() != u.cols() || u.rows() != ms.dim() * aux)
    throw Error(Errc::DimensionMismatch, "U must act on dim_in * aux");
  const CMatrix<Real>& rho0 = ms[rho0_index].matrix();
  const CMatrix<Real> l0 = projector<Real>(labels[rho0_index]);
  for (std::size_t j = 0; j < ms.size(); ++j) {
    const CMatrix<Real> lhs = tensor(ms[j].matrix(), l0);
    const CMatrix<Real> rhs =
        u * tensor(rho0, projector<Real>(labels[j])) * u.adjoint();
    if (max_abs_diff(lhs, rhs) > tol.equal_tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Operational criteria

enum class TwoStateVerdict { EssentiallyPureOrOrthogonal, Not };

inline const char* to_string(TwoStateVerdict v) {
  return v == TwoStateVerdict::EssentiallyPureOrOrthogonal
             ? "essentially_pure_or_orthogonal"
             : "not";
}

/// {rho1, rho2} is essentially pure or orthogonal iff wcd == D (to 1e-8).
template <typename Real>
TwoStateVerdict two_state_criterion(const DensityOperator<Real>& rho1,
                                    const DensityOperator<Real>& rho2,
                                    const Tolerances<Real>& tol = {}) {
  require_same_dim(rho1, rho2);
  const Real gap = std::abs(wcd(rho1, rho2, tol) - trace_distance(rho1, rho2));
  return gap <= Real(1e-8) ? TwoStateVerdict::EssentiallyPureOrOrthogonal
                           : TwoStateVerdict::Not;
}

template <typename Real = double>
struct NecessaryCriteria {
  bool same_spectrum = false;
  bool degenerate_angles = false;
  Real spectrum_gap = Real(0);  // largest elementwise eigenvalue difference
  Real angle_spread = Real(0);  // largest max-min Jordan angle over pairs
};

/// Shared spectrum and fully degenerate pairwise Jordan angles, both at 1e-8.
template <typename Real>
NecessaryCriteria<Real> necessary_criteria(const StateSet<Real>& ms,
                                           const Tolerances<Real>& tol = {}) {
  if (ms.size() < 2)
    throw Error(Errc::TooFewStates, "necessary_criteria needs at least two states");
  NecessaryCriteria<Real> rep;
  for (std::size_t i = 1; i < ms.size(); ++i)
    rep.spectrum_gap = std::max(
        rep.spectrum_gap, Real((ms[i].eigenvalues() - ms[0].eigenvalues()).cwiseAbs().maxCoeff()));
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      const auto jd = jordan(ms[i], ms[j], tol);
      rep.angle_spread =
          std::max(rep.angle_spread, Real(jd.angles.maxCoeff() - jd.angles.minCoeff()));
    }
  rep.same_spectrum = rep.spectrum_gap <= Real(1e-8);
  rep.degenerate_angles = rep.angle_spread <= Real(1e-8);
  return rep;
}

enum class Verdict { Yes, No, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

template <typename Real = double>
struct SetClassification {
  Verdict verdict = Verdict::Unknown;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<Verdict> block_verdicts;
};

/// Whether a purifying-and-reversible process exists for the set.
///
/// Splits into orthogonal blocks. Singletons are essentially pure, two-state
/// blocks are decided exactly, and larger blocks only get "no" when a
/// necessary criterion fails; otherwise "unknown".
template <typename Real>
SetClassification<Real> classify(const StateSet<Real>& ms,
                                 const Tolerances<Real>& tol = {}) {
  SetClassification<Real> out;
  out.blocks = orthogonal_blocks(ms, tol);
  bool any_unknown = false, any_no = false;
  for (const auto& block : out.blocks) {
    Verdict v = Verdict::Yes;
    if (block.size() == 2) {
      v = two_state_criterion(ms[block[0]], ms[block[1]], tol) ==
                  TwoStateVerdict::EssentiallyPureOrOrthogonal
              ? Verdict::Yes
              : Verdict::No;
    } else if (block.size() > 2) {
      std::vector<DensityOperator<Real>> members;
      for (auto i : block) members.push_back(ms[i]);
      const auto nc = necessary_criteria(StateSet<Real>(std::move(members)), tol);
      v = (nc.same_spectrum && nc.degenerate_angles) ? Verdict::Unknown : Verdict::No;
    }
    any_no |= v == Verdict::No;
    any_unknown |= v == Verdict::Unknown;
    out.block_verdicts.push_back(v);
  }
  out.verdict = any_no ? Verdict::No : any_unknown ? Verdict::Unknown : Verdict::Yes;
  return out;
}

/// rho1 = p|0><0| + (1-p)|1><1|, rho2 = p|nu+><nu+| + (1-p)|nu-><nu-| with
/// nu(+/-) = (+/-|0> + |1> +/- |2> + |3>)/2, for 0 < p < 1/2. Same spectra and
/// degenerate Jordan angles, yet not essentially pure.
template <typename Real = double>
std::pair<DensityOperator<Real>, DensityOperator<Real>> counter_example(Real p) {
  if (!(p > Real(0) && p < Real(0.5)))
    throw Error(Errc::POutOfRange, "p must lie in (0, 1/2)");
  CVector<Real> nu_plus(4), nu_minus(4);
  nu_plus << Real(0.5), Real(0.5), Real(0.5), Real(0.5);
  nu_minus << Real(-0.5), Real(0.5), Real(-0.5), Real(0.5);
  const CMatrix<Real> rho1 = p * projector<Real>(basis_vector<Real>(4, 0)) +
                             (Real(1) - p) * projector<Real>(basis_vector<Real>(4, 1));
  const CMatrix<Real> rho2 =
      p * projector<Real>(nu_plus) + (Real(1) - p) * projector<Real>(nu_minus);
  return {DensityOperator<Real>(rho1), DensityOperator<Real>(rho2)};
}

// ---------------------------------------------------------------------------
// Unambiguous discrimination

template <typename Real = double>
struct UsdFeasibility {
  bool feasible = false;
  // Squared norm of the largest component of supp rho_i outside the span of
  // the other supports.
  std::vector<Real> defects;
};

template <typename Real>
UsdFeasibility<Real> usd_feasibility(const StateSet<Real>& ms,
                                     const Tolerances<Real>& tol = {}) {
  if (ms.size() < 2) throw Error(Errc::TooFewStates, "USD needs at least two states");
  const Eigen::Index n = ms.dim();
  std::vector<Subspace<Real>> supports;
  for (const auto& s : ms) supports.push_back(support(s, tol));
  UsdFeasibility<Real> out;
  out.feasible = true;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    CMatrix<Real> others = CMatrix<Real>::Zero(n, n);
    for (std::size_t j = 0; j < ms.size(); ++j)
      if (j != i) others += supports[j].projector();
    const CMatrix<Real> q = psd_range<Real>(others, tol.eig_zero, tol);
    const CMatrix<Real> residual =
        supports[i].basis() - q * (q.adjoint() * supports[i].basis());
    Real defect = Real(0);
    if (residual.cols() > 0) {
      const CMatrix<Real> g = residual.adjoint() * residual;
      Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(g, Eigen::EigenvaluesOnly);
      defect = solver.eigenvalues().maxCoeff();
    }
    out.defects.push_back(defect);
    out.feasible = out.feasible && defect > tol.eig_zero;
  }
  return out;
}

/// Whether every support has a direction outside the sum of the others.
template <typename Real>
bool usd_feasible(const StateSet<Real>& ms, const Tolerances<Real>& tol = {}) {
  return usd_feasibility(ms, tol).feasible;
}

/// Canonical purification vec(sqrt(rho)) on H (x) H, so that tracing out
/// the second factor returns rho.
template <typename Real>
CVector<Real> canonical_purification(const DensityOperator<Real>& rho) {
  const Eigen::Index n = rho.dim();
  const RVector<Real> sq = rho.eigenvalues().cwiseMax(Real(0)).cwiseSqrt();
  const CMatrix<Real> root =
      rho.eigenvectors() * sq.asDiagonal() * rho.eigenvectors().adjoint();
  CVector<Real> out(n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) out(j * n + k) = root(j, k);
  return out;
}

template <typename Real = double>
struct UsdPurifier {
  KrausChannel<Real> channel;        // trace-non-increasing, dim n -> n*n
  std::vector<Real> success;         // tr(channel[rho_i])
  std::vector<CVector<Real>> labels; // purification of each rho_i
};

/// Unambiguous discrimination followed by preparation of a purification.
///
/// For linearly independent supports the dual frame D = B (B^dagger B)^-1
/// of the stacked support bases gives POVM elements c D_i D_i^dagger that
/// vanish on every other support; c = 1 / lambda_max(D D^dagger) keeps the
/// sum below the identity. Outcome i prepares vec(sqrt(rho_i)), so the map
/// sends rho_i to p_i |psi_i><psi_i| and zero-weight errors never occur.
/// For two pure states p_i = 1 - |<psi1|psi2>|.
template <typename Real>
UsdPurifier<Real> usd_purifier_demo(const StateSet<Real>& ms,
                                    const Tolerances<Real>& tol = {}) {
  if (!usd_feasible(ms, tol))
    throw Error(Errc::NotFeasible, "no unambiguous discrimination exists for this set");
  const Eigen::Index n = ms.dim();
  std::vector<Subspace<Real>> supports;
  Eigen::Index total = 0;
  for (const auto& s : ms) {
    supports.push_back(support(s, tol));
    total += supports.back().rank();
  }
  if (total > n)
    throw Error(Errc::Unsupported, "supports are not linearly independent");
  CMatrix<Real> stacked(n, total);
  std::vector<Eigen::Index> offset;
  for (Eigen::Index c = 0; const auto& s : supports) {
    offset.push_back(c);
    stacked.middleCols(c, s.rank()) = s.basis();
    c += s.rank();
  }
  const CMatrix<Real> gram = stacked.adjoint() * stacked;
  const auto gram_eig = hermitian_eig(gram, tol);
  if (gram_eig.values(total - 1) <= std::sqrt(tol.eig_zero))
    throw Error(Errc::Unsupported, "supports are not linearly independent");
  const CMatrix<Real> dual = stacked * gram.inverse();
  const auto frame_eig = hermitian_eig(CMatrix<Real>(dual * dual.adjoint()), tol);
  const Real scale = Real(1) / frame_eig.values(0);

  std::vector<CMatrix<Real>> ks;
  UsdPurifier<Real> out{KrausChannel<Real>(n, n * n, {CMatrix<Real>::Zero(n * n, n)}, false),
                        {}, {}};
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const auto di = dual.middleCols(offset[i], supports[i].rank());
    const CMatrix<Real> povm = scale * di * di.adjoint();
    const CVector<Real> label = canonical_purification(ms[i]);
    const auto pe = hermitian_eig(CMatrix<Real>((povm + povm.adjoint()) / Real(2)), tol);
    for (Eigen::Index j = 0; j < supports[i].rank(); ++j) {
      const Real w = std::sqrt(std::max(Real(0), pe.values(j)));
      ks.push_back(w * label * pe.vectors.col(j).adjoint());
    }
    out.success.push_back((povm * ms[i].matrix()).trace().real());
    out.labels.push_back(label);
  }
  out.channel = KrausChannel<Real>(n, n * n, std::move(ks), false);
  return out;
}

}  // namespace qpure

#endif  // QPURE_SETANALYSIS_HPP
