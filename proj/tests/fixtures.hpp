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

// Random fixtures shared by the unit and acceptance tests.

#ifndef QPURE_TESTS_FIXTURES_HPP
#define QPURE_TESTS_FIXTURES_HPP

#include <vector>

#include "qpure/qpure.hpp"

namespace fixture {

using qpure::CMatrix;
using qpure::CVector;

/// Essentially pure recipe on A (x) B with B = B' (x) C. The unitary is
/// U' (x) 1_C and sigma_B = sigma' (x) omega_C, so the rotated states factor
/// as rho (x) omega_C with rho on A (x) B'. For dim_C = 1 this is a fully
/// generic recipe.
inline qpure::EssentiallyPureRecipe<double> random_recipe(qpure::Xoshiro256& rng,
                                                          Eigen::Index dim_c,
                                                          std::size_t n_states = 2,
                                                          Eigen::Index max_a = 3) {
  using namespace qpure;
  const Eigen::Index da = 2 + Eigen::Index(rng.uniform_index(std::size_t(max_a - 1)));
  const Eigen::Index dbp = 1 + Eigen::Index(rng.uniform_index(2));
  const auto sigma_p = random_density<double>(dbp, 1 + Eigen::Index(rng.uniform_index(std::size_t(dbp))), rng);
  const auto omega = random_density<double>(dim_c, 1 + Eigen::Index(rng.uniform_index(std::size_t(dim_c))), rng);
  const CMatrix<double> up = random_unitary<double>(da * dbp, rng);
  std::vector<CVector<double>> vs;
  for (std::size_t i = 0; i < n_states; ++i) vs.push_back(random_unit_vector<double>(da, rng));
  return {da,
          dbp * dim_c,
          dim_c,
          tensor(up, identity<double>(dim_c)),
          tensor(sigma_p, omega),
          omega,
          std::move(vs)};
}

}  // namespace fixture

#endif  // QPURE_TESTS_FIXTURES_HPP
