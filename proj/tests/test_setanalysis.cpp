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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qpure/qpure.hpp"

using namespace qpure;
using Mat = CMatrix<double>;
using Vec = CVector<double>;
using State = DensityOperator<double>;
using Set = StateSet<double>;

namespace {

template <typename F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return Errc::Unsupported;
}

State ket(Eigen::Index d, Eigen::Index k) { return State::pure(basis_vector(d, k)); }

Vec plus(Eigen::Index d = 2) { return (basis_vector(d, 0) + basis_vector(d, 1)) / std::numbers::sqrt2; }

// State whose support lies in the span of the columns of `b`.
State inside(const Mat& b, Eigen::Index rank, Xoshiro256& rng) {
  const auto small = random_density<double>(b.cols(), std::min(rank, b.cols()), rng);
  return State(b * small.matrix() * b.adjoint());
}

}  // namespace

TEST_CASE("state sets must be non-empty and of one dimension") {
  CHECK(code_of([] { Set(std::vector<State>{}); }) == Errc::TooFewStates);
  CHECK(code_of([] { Set({ket(2, 0), ket(3, 0)}); }) == Errc::DimensionMismatch);
}

TEST_CASE("orthogonal partition examples") {
  const auto blocks = orthogonal_blocks(Set({ket(3, 0), ket(3, 1), ket(3, 2)}));
  CHECK(blocks.size() == 3);

  Xoshiro256 rng(1);
  CHECK(partition_orthogonal(Set({random_density<double>(3, 3, rng), random_density<double>(3, 3, rng)})).size() == 1);

  const auto mixed = orthogonal_blocks(Set({ket(3, 0), State::pure(plus(3)), ket(3, 2)}));
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0] == std::vector<std::size_t>{0, 1});
  CHECK(mixed[1] == std::vector<std::size_t>{2});
}

TEST_CASE("orthogonal partition blocks are orthogonal and exhaustive") {
  Xoshiro256 rng(2);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index d = 6;
    const Mat u = random_unitary<double>(d, rng);
    // Three mutually orthogonal 2-dim sectors, each holding a few states.
    std::vector<State> states;
    for (int k = 0; k < 6; ++k) {
      const Eigen::Index sector = Eigen::Index(rng.uniform_index(3));
      states.push_back(inside(Mat(u.middleCols(2 * sector, 2)), 2, rng));
    }
    const Set ms(states);
    const auto blocks = orthogonal_blocks(ms);
    std::vector<int> seen(ms.size(), 0);
    for (const auto& b : blocks)
      for (auto i : b) ++seen[i];
    for (int s : seen) CHECK(s == 1);
    for (std::size_t x = 0; x < blocks.size(); ++x)
      for (std::size_t y = x + 1; y < blocks.size(); ++y)
        for (auto i : blocks[x])
          for (auto j : blocks[y])
            CHECK((ms[i].matrix() * ms[j].matrix()).trace().real() <= 1e-10);
    const auto parts = partition_orthogonal(ms);
    CHECK(parts.size() == blocks.size());
  }
}

TEST_CASE("generated essentially pure sets") {
  SUBCASE("identity rotation with a pure sigma gives pure product states") {
    Xoshiro256 rng(3);
    const EssentiallyPureRecipe<double> r{2, 2, 1, identity(4), ket(2, 1), State(identity(1)),
                                          {Vec(basis_vector(2, 0)), plus()}};
    const auto ms = generate_essentially_pure(r);
    for (const auto& s : ms) CHECK(std::abs(purity(s) - 1.0) < 1e-12);
    CHECK(max_abs_diff(ms[1].matrix(), tensor(projector(plus()), projector(Vec(basis_vector(2, 1))))) < 1e-12);
  }
  SUBCASE("identity rotation with a mixed sigma shares its spectrum") {
    Xoshiro256 rng(4);
    const auto sigma = random_density<double>(3, 3, rng);
    const EssentiallyPureRecipe<double> r{2, 3, 1, identity(6), sigma, State(identity(1)),
                                          {random_unit_vector<double>(2, rng), random_unit_vector<double>(2, rng)}};
    const auto ms = generate_essentially_pure(r);
    for (const auto& s : ms) {
      CHECK(std::abs(purity(s) - purity(sigma)) < 1e-12);
      CHECK((s.eigenvalues().head(3) - sigma.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("random rotation, diag(3/4, 1/4) mixture") {
    Xoshiro256 rng(5);
    const EssentiallyPureRecipe<double> r{2, 2, 1, random_unitary<double>(4, rng), State(diag({0.75, 0.25})),
                                          State(identity(1)),
                                          {random_unit_vector<double>(2, rng), random_unit_vector<double>(2, rng)}};
    const auto ms = generate_essentially_pure(r);
    CHECK(two_state_criterion(ms[0], ms[1]) == TwoStateVerdict::EssentiallyPureOrOrthogonal);
  }
}

TEST_CASE("recipe consistency checks") {
  Xoshiro256 rng(6);
  auto r = fixture::random_recipe(rng, 2);
  CHECK_NOTHROW(generate_essentially_pure(r));
  // A generic unitary mixes C into A (x) B', so the product form breaks.
  auto bad = r;
  bad.u = random_unitary<double>(r.dim_a * r.dim_b, rng);
  CHECK(code_of([&] { generate_essentially_pure(bad); }) == Errc::RecipeInconsistent);
  auto odd = r;
  odd.dim_c = 5;
  CHECK(code_of([&] { generate_essentially_pure(odd); }) == Errc::RecipeInconsistent);
  auto nonunit = r;
  nonunit.u = 2.0 * r.u;
  CHECK(code_of([&] { generate_essentially_pure(nonunit); }) == Errc::NotUnitary);
}

TEST_CASE("generated pairs always pass the two-state criterion") {
  Xoshiro256 rng(7);
  for (int t = 0; t < 100; ++t) {
    const auto r = fixture::random_recipe(rng, 1 + Eigen::Index(t % 2), 2, 4);
    const auto ms = generate_essentially_pure(r);
    CHECK(two_state_criterion(ms[0], ms[1]) == TwoStateVerdict::EssentiallyPureOrOrthogonal);
  }
}

TEST_CASE("reversible purifier restores every member") {
  Xoshiro256 rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto r = fixture::random_recipe(rng, 1 + Eigen::Index(t % 2), 3);
    const auto ms = generate_essentially_pure(r);
    const auto rp = reversible_purifier(r);
    CHECK(validate(rp.forward).ok);
    CHECK(validate(rp.reverse).ok);
    const auto round = compose(rp.reverse, rp.forward);
    for (std::size_t j = 0; j < ms.size(); ++j) {
      const Mat out = apply(rp.forward, ms[j]);
      CHECK(max_abs_diff(out, projector(r.pure_vectors[j])) <= 1e-9);
      CHECK(max_abs_diff(apply(round, ms[j]), ms[j].matrix()) <= 1e-8);
    }
  }
}

TEST_CASE("simplified form verification") {
  Xoshiro256 rng(9);
  const auto rho = random_density<double>(3, 2, rng);
  CHECK(verify_simplified(Set({rho}), 0, identity(3), {Vec(basis_vector(1, 0))}));

  for (int t = 0; t < 20; ++t) {
    const auto r = fixture::random_recipe(rng, 1, 3);
    const auto ms = generate_essentially_pure(r);
    const auto w = simplified_witness(r);
    CHECK(is_unitary(w.u, 1e-9));
    CHECK(verify_simplified(ms, 0, w.u, w.labels));
    CHECK(verify_simplified(ms, 2, w.u, w.labels));
  }

  const Set diff({State(diag({0.75, 0.25})), State(diag({0.5, 0.5}))});
  for (int t = 0; t < 5; ++t)
    CHECK_FALSE(verify_simplified(diff, 0, random_unitary<double>(4, rng),
                                  {random_unit_vector<double>(2, rng), random_unit_vector<double>(2, rng)}));

  CHECK(code_of([&] { verify_simplified(diff, 0, identity(4), {Vec(basis_vector(2, 0))}); }) ==
        Errc::DimensionMismatch);
  CHECK(code_of([&] { verify_simplified(diff, 0, identity(3), {Vec(basis_vector(2, 0)), Vec(basis_vector(2, 1))}); }) ==
        Errc::DimensionMismatch);
  CHECK(code_of([&] { simplified_witness(fixture::random_recipe(rng, 2)); }) == Errc::Unsupported);
}

TEST_CASE("two-state criterion examples") {
  Xoshiro256 rng(10);
  for (int t = 0; t < 10; ++t)
    CHECK(two_state_criterion(random_pure<double>(3, rng), random_pure<double>(3, rng)) ==
          TwoStateVerdict::EssentiallyPureOrOrthogonal);
  CHECK(two_state_criterion(State(diag({0.5, 0.5, 0.0, 0.0})), State(diag({0.0, 0.0, 0.3, 0.7}))) ==
        TwoStateVerdict::EssentiallyPureOrOrthogonal);
  const auto [r1, r2] = counter_example(0.25);
  CHECK(two_state_criterion(r1, r2) == TwoStateVerdict::Not);
  CHECK(std::string(to_string(TwoStateVerdict::Not)) == "not");
  CHECK(code_of([] { two_state_criterion(ket(2, 0), ket(3, 0)); }) == Errc::DimensionMismatch);
}

TEST_CASE("necessary criteria") {
  Xoshiro256 rng(11);
  const auto rho = random_density<double>(4, 2, rng);
  std::vector<State> copies;
  for (int k = 0; k < 3; ++k) {
    const Mat u = random_unitary<double>(4, rng);
    copies.push_back(State(u * rho.matrix() * u.adjoint()));
  }
  CHECK(necessary_criteria(Set(copies)).same_spectrum);

  const auto [r1, r2] = counter_example(0.25);
  const auto nc = necessary_criteria(Set({r1, r2}));
  CHECK(nc.same_spectrum);
  CHECK(nc.degenerate_angles);
  CHECK(nc.angle_spread <= 1e-9);

  CHECK_FALSE(necessary_criteria(Set({random_density<double>(3, 1, rng), random_density<double>(3, 2, rng)})).same_spectrum);
  CHECK(code_of([&] { necessary_criteria(Set({rho})); }) == Errc::TooFewStates);
}

TEST_CASE("counter-example family") {
  const auto [a, b] = counter_example(0.25);
  CHECK((a.eigenvalues().head(2) - Eigen::Vector2d(0.75, 0.25)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((b.eigenvalues().head(2) - Eigen::Vector2d(0.75, 0.25)).cwiseAbs().maxCoeff() < 1e-12);
  for (int k = 1; k <= 20; ++k) {
    const double p = 0.5 * k / 21.0;
    const auto [r1, r2] = counter_example(p);
    const auto nc = necessary_criteria(Set({r1, r2}));
    CHECK(nc.same_spectrum);
    CHECK(nc.degenerate_angles);
    CHECK(std::abs(wcd(r1, r2) - 1.0 / std::numbers::sqrt2) < 1e-9);
    CHECK(std::abs(trace_distance(r1, r2) - oracle::counter_example_distance(p)) < 1e-12);
    CHECK(two_state_criterion(r1, r2) == TwoStateVerdict::Not);
  }
  for (double p : {0.0, 0.5, -1.0, 0.7})
    CHECK(code_of([p] { counter_example(p); }) == Errc::POutOfRange);
}

TEST_CASE("classification of whole sets") {
  const auto [r1, r2] = counter_example(0.25);
  CHECK(classify(Set({r1, r2})).verdict == Verdict::No);
  CHECK(classify(Set({ket(3, 0), State::pure(plus(3)), ket(3, 2)})).verdict == Verdict::Yes);

  Xoshiro256 rng(12);
  const auto r = fixture::random_recipe(rng, 1, 3);
  const auto c = classify(generate_essentially_pure(r));
  CHECK(c.verdict == Verdict::Unknown);
  CHECK(std::string(to_string(c.verdict)) == "unknown");

  const Set three({random_density<double>(3, 1, rng), random_density<double>(3, 2, rng), random_density<double>(3, 2, rng)});
  CHECK(classify(three).verdict == Verdict::No);
}

TEST_CASE("usd feasibility examples") {
  CHECK(usd_feasible(Set({ket(2, 0), ket(2, 1)})));
  Xoshiro256 rng(13);
  const auto rho = random_density<double>(3, 2, rng);
  const auto rep = usd_feasibility(Set({rho, rho}));
  CHECK_FALSE(rep.feasible);
  CHECK(usd_feasible(Set({ket(2, 0), State::pure(plus())})));
  CHECK(code_of([&] { usd_feasible(Set({rho})); }) == Errc::TooFewStates);
}

TEST_CASE("usd feasibility matches the rank oracle and is unitarily invariant") {
  Xoshiro256 rng(14);
  int feasible = 0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index d = 2 + Eigen::Index(rng.uniform_index(3));
    const std::size_t n = 2 + rng.uniform_index(2);
    std::vector<State> states;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && rng.uniform() < 0.3) {
        // Support inside the span of an earlier state's support.
        const Mat b = support(states[rng.uniform_index(i)]).basis();
        states.push_back(inside(b, b.cols(), rng));
      } else {
        states.push_back(oracle::random_state(d, d - 1, rng));
      }
    }
    const Set ms(states);
    std::vector<Mat> raw;
    for (const auto& s : ms) raw.push_back(s.matrix());
    const bool v = usd_feasible(ms);
    CHECK(v == oracle::usd_feasible(raw));
    feasible += v;
    const Mat u = random_unitary<double>(d, rng);
    std::vector<State> rotated;
    for (const auto& s : ms) rotated.push_back(State(u * s.matrix() * u.adjoint()));
    CHECK(usd_feasible(Set(rotated)) == v);
  }
  CHECK(feasible > 20);
  CHECK(feasible < 180);
}

TEST_CASE("usd purifier demo") {
  SUBCASE("orthogonal inputs succeed with certainty") {
    const auto demo = usd_purifier_demo(Set({ket(3, 0), ket(3, 1), ket(3, 2)}));
    for (double s : demo.success) CHECK(std::abs(s - 1.0) < 1e-12);
    CHECK(validate(demo.channel).ok);
  }
  SUBCASE("zero and plus") {
    const Set ms({ket(2, 0), State::pure(plus())});
    const auto demo = usd_purifier_demo(ms);
    const double best = oracle::usd_success_two_pure(basis_vector(2, 0), plus());
    CHECK(std::abs(best - (1.0 - 1.0 / std::numbers::sqrt2)) < 1e-6);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs(demo.success[i] - (1.0 - 1.0 / std::numbers::sqrt2)) < 1e-12);
      const Mat out = apply(demo.channel, ms[i]);
      CHECK(std::abs(out.trace().real() - demo.success[i]) < 1e-12);
      // Conditioned on success the output is the label, never the other one.
      CHECK(max_abs_diff(Mat(out / demo.success[i]), projector(demo.labels[i])) < 1e-9);
    }
    const auto det = determinize(demo.channel);
    for (const auto& s : ms) CHECK(purity(apply(det, s)) < 1.0);
  }
  SUBCASE("mixed states with independent supports") {
    Xoshiro256 rng(15);
    const Mat u = random_unitary<double>(4, rng);
    const Set ms({inside(Mat(u.leftCols(2)), 2, rng), inside(Mat(u.rightCols(2) * 0.8 + u.leftCols(2) * 0.6), 2, rng)});
    const auto demo = usd_purifier_demo(ms);
    CHECK(validate(demo.channel).ok);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(demo.success[i] > 0.0);
      const Mat out = apply(demo.channel, ms[i]);
      CHECK(max_abs_diff(Mat(out / demo.success[i]), projector(demo.labels[i])) < 1e-9);
    }
  }
  SUBCASE("errors") {
    Xoshiro256 rng(16);
    const auto rho = random_density<double>(3, 2, rng);
    CHECK(code_of([&] { usd_purifier_demo(Set({rho, rho})); }) == Errc::NotFeasible);
    CHECK(code_of([&] {
            usd_purifier_demo(Set({random_density<double>(3, 2, rng), random_density<double>(3, 2, rng)}));
          }) == Errc::Unsupported);
  }
}

TEST_CASE("canonical purification reduces to the state") {
  Xoshiro256 rng(17);
  for (int t = 0; t < 20; ++t) {
    const auto rho = oracle::random_state(3, 3, rng);
    const Vec v = canonical_purification(rho);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    CHECK(max_abs_diff(partial_trace(projector(v), 3, 3, Keep::First), rho.matrix()) < 1e-12);
  }
}
