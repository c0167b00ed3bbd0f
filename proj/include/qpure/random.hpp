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

#ifndef QPURE_RANDOM_HPP
#define QPURE_RANDOM_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "qpure/matcore.hpp"

namespace qpure {

/// Portable xoshiro256** generator.
///
/// The state is seeded from a single 64-bit value by four SplitMix64 steps.
/// Streams are identical on every platform, unlike the std:: engines paired
/// with std:: distributions.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type(0); }

  result_type operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in (0, 1]: top 53 bits, shifted away from zero.
  double uniform() { return (double((*this)() >> 11) + 1.0) * 0x1.0p-53; }

  /// Standard normal via Box-Muller. Each call consumes two uniforms and
  /// returns the cosine branch; `normal_pair` exposes both branches.
  double normal() { return normal_pair().first; }

  std::pair<double, double> normal_pair() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  /// Standard complex Gaussian, E|z|^2 = 1: one Box-Muller pair gives the
  /// real and imaginary parts, each scaled by 1/sqrt(2).
  std::complex<double> complex_normal() {
    const auto [a, b] = normal_pair();
    return {a * std::numbers::sqrt2 / 2.0, b * std::numbers::sqrt2 / 2.0};
  }

  std::size_t uniform_index(std::size_t n) {
    return std::size_t(uniform() * double(n)) % n;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::array<std::uint64_t, 4> state_{};
};

/// Matrix of independent standard complex Gaussians, filled row-major.
template <typename Real = double>
CMatrix<Real> ginibre(Eigen::Index rows, Eigen::Index cols, Xoshiro256& rng) {
  CMatrix<Real> g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto z = rng.complex_normal();
      g(i, j) = Complex<Real>(Real(z.real()), Real(z.imag()));
    }
  return g;
}

/// Haar-random isometry with `cols` orthonormal columns in dimension `rows`
/// (a unitary when rows == cols): QR of a Ginibre matrix with the phases of
/// R's diagonal moved into Q.
template <typename Real = double>
CMatrix<Real> random_isometry(Eigen::Index rows, Eigen::Index cols,
                              Xoshiro256& rng) {
  const CMatrix<Real> g = ginibre<Real>(rows, cols, rng);
  Eigen::HouseholderQR<CMatrix<Real>> qr(g);
  CMatrix<Real> q = qr.householderQ() * CMatrix<Real>::Identity(rows, cols);
  const CMatrix<Real> r = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Real a = std::abs(r(j, j));
    if (a > Real(0)) q.col(j) *= r(j, j) / a;
  }
  return q;
}

template <typename Real = double>
CMatrix<Real> random_unitary(Eigen::Index dim, Xoshiro256& rng) {
  return random_isometry<Real>(dim, dim, rng);
}

/// Haar-random unit vector.
template <typename Real = double>
CVector<Real> random_unit_vector(Eigen::Index dim, Xoshiro256& rng) {
  CVector<Real> v = ginibre<Real>(dim, 1, rng);
  return v / v.norm();
}

}  // namespace qpure

#endif  // QPURE_RANDOM_HPP
