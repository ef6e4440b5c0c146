#include "crn/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

using namespace crn;

namespace {

const char* kChain4 =
    "A1 <-> A2; 1, 1\n"
    "A2 <-> A1 + A2; 1, 1\n"
    "A1 + A2 <-> A1 + A3; 1, 1\n";

const char* kTriangle =
    "A1 -> A2; 1\n"
    "A2 -> A3; 1\n"
    "A3 -> A1; 1\n";

}  // namespace

TEST_CASE("input validation") {
  auto net = parse_network(kTriangle);
  CHECK_THROWS_AS(integrate(net, {1.0, 1.0}, 1.0, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(integrate(net, {1.0, -1.0, 1.0}, 1.0, 1e-8),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate(net, {1.0, 1.0, 1.0}, -1.0, 1e-8),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate(net, {1.0, 1.0, 1.0}, 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("linear relaxation integrates accurately") {
  // A1 <-> A2 unit rates from (2, 0.5): x1(t) = 1.25 + 0.75 e^{-2t}
  auto net = parse_network("A1 <-> A2; 1, 1\n");
  auto traj = integrate(net, {2.0, 0.5}, 3.0, 1e-10, 100);
  CHECK_FALSE(traj.stiff_abort);
  for (size_t k = 0; k < traj.times.size(); ++k) {
    double expect = 1.25 + 0.75 * std::exp(-2 * traj.times[k]);
    CHECK(traj.states[k][0] == doctest::Approx(expect).epsilon(1e-7));
    CHECK(traj.states[k][0] + traj.states[k][1] == doctest::Approx(2.5));
  }
}

TEST_CASE("triangle converges to the class equilibrium") {
  auto net = parse_network(kTriangle);
  auto traj = integrate(net, {1.0, 1.0, 2.0}, 50.0, 1e-10);
  const auto& xf = traj.states.back();
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(xf[j] - 4.0 / 3) <= 1e-6);
}

TEST_CASE("trajectories stay positive") {
  auto net = parse_network(kChain4);
  auto traj = integrate(net, {1e-3, 10.0, 1e-3}, 20.0, 1e-8);
  for (const auto& x : traj.states)
    for (double v : x) CHECK(v > 0);
}

TEST_CASE("lyapunov function hand values and boundary convention") {
  std::vector<double> x_star = {1.0, 2.0};
  CHECK(lyapunov(x_star, x_star) ==
        doctest::Approx(1.0 * (0 - 1) + 1 + 2.0 * (0 - 1) + 2).epsilon(1e-12));
  CHECK(lyapunov({0.0, 2.0}, x_star) == doctest::Approx(1.0 + 0.0));
  // strictly positive away from x*
  CHECK(lyapunov({2.0, 2.0}, x_star) > lyapunov(x_star, x_star));
}

TEST_CASE("lyapunov decreases along trajectories") {
  auto net = parse_network(kChain4);
  auto eq = find_equilibrium(net);
  REQUIRE(eq.has_value());
  std::vector<double> x0 = {4.0, 0.3, 1.7};
  auto x_star = project_to_class(net, *eq, x0);
  auto traj = integrate(net, x0, 30.0, 1e-10);
  double prev = lyapunov(traj.states[0], x_star);
  for (size_t k = 1; k < traj.states.size(); ++k) {
    double cur = lyapunov(traj.states[k], x_star);
    CHECK(cur <= prev + 1e-9);
    prev = cur;
  }
}

TEST_CASE("locate_stratum reproduces the hand ordering") {
  auto net = parse_network(kChain4);
  std::vector<double> x_star = {1.0, 1.0, 1.0};
  // x = (0.5, 2, 0.9): monomials x^{z_i} are x1=0.5, x2=2, x1x2=1, x1x3=0.45
  auto label = locate_stratum({0.5, 2.0, 0.9}, x_star, net.complexes);
  CHECK_FALSE(label.tied());
  CHECK(label.str() == "2>3>1>4");
  CHECK(label.strict_equals({1, 2, 0, 3}));
  CHECK_FALSE(label.strict_equals({1, 2, 3, 0}));
}

TEST_CASE("locate_stratum groups ties") {
  auto net = parse_network(kChain4);
  std::vector<double> x_star = {1.0, 1.0, 1.0};
  auto label = locate_stratum({1.0, 2.0, 2.0}, x_star, net.complexes);
  // monomials: 1, 2, 2, 2 -> complex 1 alone at the bottom
  CHECK(label.tied());
  CHECK(label.str() == "{2,3,4}>1");
}

TEST_CASE("monitor validates a certified run") {
  auto net = parse_network(kChain4);
  auto cert = certify_global_stability(net);
  REQUIRE(cert.verdict == Verdict::GloballyStable);
  std::vector<double> x0 = {0.2, 3.0, 1.1};
  auto x_star = project_to_class(net, *cert.equilibrium, x0);
  auto traj = integrate(net, x0, 40.0, 1e-10);
  auto rep = monitor(net, traj, x_star, &cert);
  CHECK(rep.max_lyapunov_increase <= 1e-8);
  CHECK(rep.conservation_drift <= 1e-8);
  CHECK(rep.h_violations.empty());
  CHECK(rep.lyapunov_values.size() == traj.states.size());
  CHECK(rep.lyapunov_values.back() < rep.lyapunov_values.front());
}

TEST_CASE("monitor reports conservation drift on conserved systems") {
  auto net = parse_network(kTriangle);
  auto cert = certify_global_stability(net);
  std::vector<double> x0 = {1.0, 1.0, 2.0};
  auto x_star = project_to_class(net, *cert.equilibrium, x0);
  auto traj = integrate(net, x0, 20.0, 1e-10);
  auto rep = monitor(net, traj, x_star, &cert);
  CHECK(rep.conservation_drift <= 1e-9);
  CHECK(rep.max_lyapunov_increase <= 1e-9);
}

TEST_CASE("csv output shape") {
  auto net = parse_network(kTriangle);
  auto traj = integrate(net, {1.0, 1.0, 2.0}, 1.0, 1e-8, 10);
  auto csv = trajectory_csv(net, traj, {4.0 / 3, 4.0 / 3, 4.0 / 3});
  CHECK(csv.rfind("t,x_1,x_2,x_3,L,stratum_label\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);  // header + 11 rows
}

TEST_CASE("uniform grid has the requested sample count") {
  auto net = parse_network(kTriangle);
  auto traj = integrate(net, {1.0, 1.0, 2.0}, 5.0, 1e-8, 250);
  CHECK(traj.times.size() == 251);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(5.0));
  for (size_t k = 1; k < traj.times.size(); ++k)
    CHECK(traj.times[k] > traj.times[k - 1]);
}
