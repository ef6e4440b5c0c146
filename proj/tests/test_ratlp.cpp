#include "crn/ratlp.hpp"

#include <random>

#include "doctest.h"

using namespace crn;

namespace {

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.emplace_back(x, 1);
  return v;
}

}  // namespace

TEST_CASE("opposite strict bounds are infeasible with certificate (1,1)") {
  std::vector<LinearConstraint> cs = {
      {rv({1}), Rel::GT, Rat(0)},
      {rv({1}), Rel::LT, Rat(0)},
  };
  auto res = solve_feasibility(cs, 1);
  REQUIRE_FALSE(res.feasible);
  CHECK(res.certificate == rv({1, 1}));
  CHECK(certificate_valid(cs, res.certificate));
}

TEST_CASE("empty system is feasible at the origin") {
  auto res = solve_feasibility({}, 3);
  REQUIRE(res.feasible);
  CHECK(res.witness == rv({0, 0, 0}));
}

TEST_CASE("alpha system for the chain example is feasible") {
  // <v, alpha> <= 0 for the four admissible vectors, alpha_1 <= -1,
  // alpha_2 <= -1, alpha_3 = 0; (-1,-1,0) must be a solution.
  std::vector<LinearConstraint> cs = {
      {rv({1, -1, 0}), Rel::LE, Rat(0)},
      {rv({-1, 1, 0}), Rel::LE, Rat(0)},
      {rv({1, 0, 0}), Rel::LE, Rat(0)},
      {rv({0, 1, -1}), Rel::LE, Rat(0)},
      {rv({1, 0, 0}), Rel::LE, Rat(-1)},
      {rv({0, 1, 0}), Rel::LE, Rat(-1)},
      {rv({0, 0, 1}), Rel::EQ, Rat(0)},
  };
  auto res = solve_feasibility(cs, 3);
  REQUIRE(res.feasible);
  CHECK(satisfies_all(cs, res.witness));
  CHECK(satisfies_all(cs, rv({-1, -1, 0})));
}

TEST_CASE("strict directions: opposite half-spaces vs orthant") {
  auto bad = solve_strict_direction({rv({1, 0}), rv({-1, 0})});
  CHECK_FALSE(bad.feasible);
  auto good = solve_strict_direction({rv({1, 0}), rv({0, 1})});
  REQUIRE(good.feasible);
  Rat d1 = good.witness[0], d2 = good.witness[1];
  CHECK(d1 > 0);
  CHECK(d2 > 0);
}

TEST_CASE("zero direction vector is immediately infeasible") {
  auto res = solve_strict_direction({rv({1, 1}), rv({0, 0})});
  REQUIRE_FALSE(res.feasible);
  CHECK(res.certificate == rv({0, 1}));
}

TEST_CASE("dimension mismatch is an input error") {
  std::vector<LinearConstraint> cs = {{rv({1, 2}), Rel::GE, Rat(0)}};
  CHECK_THROWS_AS(solve_feasibility(cs, 3), std::invalid_argument);
}

TEST_CASE("farkas exclusivity on random systems") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> dims(1, 6);
  std::uniform_int_distribution<int> rels(0, 4);
  for (int iter = 0; iter < 1000; ++iter) {
    int dim = dims(rng);
    std::uniform_int_distribution<int> nc(1, 2 * dim + 2);
    std::vector<LinearConstraint> cs;
    int count = nc(rng);
    for (int k = 0; k < count; ++k) {
      LinearConstraint c;
      for (int j = 0; j < dim; ++j) c.coeffs.emplace_back(coeff(rng), 1);
      c.rel = static_cast<Rel>(rels(rng));
      c.rhs = Rat(coeff(rng), 1);
      cs.push_back(std::move(c));
    }
    auto res = solve_feasibility(cs, dim);
    if (res.feasible) {
      CHECK(satisfies_all(cs, res.witness));
    } else {
      CHECK(certificate_valid(cs, res.certificate));
    }
  }
}

TEST_CASE("status is invariant under positive scaling of a constraint") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> scale(1, 9);
  std::uniform_int_distribution<int> rels(0, 4);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<LinearConstraint> cs;
    for (int k = 0; k < 4; ++k) {
      LinearConstraint c;
      for (int j = 0; j < 3; ++j) c.coeffs.emplace_back(coeff(rng), 1);
      c.rel = static_cast<Rel>(rels(rng));
      c.rhs = Rat(coeff(rng), 1);
      cs.push_back(std::move(c));
    }
    auto base = solve_feasibility(cs, 3);
    auto scaled = cs;
    Rat f(scale(rng), scale(rng));
    for (auto& q : scaled[0].coeffs) q *= f;
    scaled[0].rhs *= f;
    auto res = solve_feasibility(scaled, 3);
    CHECK(base.feasible == res.feasible);
  }
}

TEST_CASE("determinism: identical input yields identical witness") {
  std::vector<LinearConstraint> cs = {
      {rv({1, 1}), Rel::GE, Rat(1)},
      {rv({1, -1}), Rel::LE, Rat(2)},
  };
  auto a = solve_feasibility(cs, 2);
  auto b = solve_feasibility(cs, 2);
  REQUIRE(a.feasible);
  CHECK(a.witness == b.witness);
}
