#include "crn/graph.hpp"

#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "crn/equilibrium.hpp"

using namespace crn;

namespace {

// A1 <-> A2 <-> A1+A2 <-> A1+A3, detailed balanced chain of four complexes.
const char* kChain4 =
    "A1 <-> A2; 1, 1\n"
    "A2 <-> A1 + A2; 1, 1\n"
    "A1 + A2 <-> A1 + A3; 1, 1\n";

// A1 <-> 2A2 plus the directed cycle 2A2 -> A1+A2 -> A2+A3 -> A1.
const char* kMixedCycle =
    "A1 <-> 2 A2; 1, 1\n"
    "2 A2 -> A1 + A2; 1\n"
    "A1 + A2 -> A2 + A3; 1\n"
    "A2 + A3 -> A1; 1\n";

const char* kTwoComponent =
    "A1 -> A2; 1\n"
    "2 A2 -> 2 A1; 1\n";

std::vector<int> cycle_of(const CycleDecomposition& d, size_t i) {
  return d.cycles[i].first.indices;
}

std::vector<std::vector<double>> flux_at_equilibrium(const ReactionNetwork& net) {
  auto eq = find_equilibrium(net);
  REQUIRE(eq.has_value());
  return equilibrium_flux(net, eq->x_star);
}

}  // namespace

TEST_CASE("linkage classes") {
  CHECK(linkage_classes(parse_network(kChain4)).count() == 1);
  CHECK(linkage_classes(parse_network(kTwoComponent)).count() == 2);
  CHECK(linkage_classes(parse_network("A1 <-> A2; 1, 1\n")).count() == 1);
}

TEST_CASE("weak reversibility") {
  CHECK(is_weakly_reversible(parse_network(kChain4)));
  CHECK(is_weakly_reversible(parse_network(kMixedCycle)));
  CHECK(is_weakly_reversible(
      parse_network("A1 -> A2; 1\nA2 -> A3; 2\nA3 -> A1; 3\n")));
  CHECK_FALSE(is_weakly_reversible(parse_network(kTwoComponent)));
}

TEST_CASE("deficiency") {
  CHECK(deficiency(parse_network(kChain4)) == 0);       // 4 - 1 - 3
  CHECK(deficiency(parse_network(kMixedCycle)) == 0);   // 4 - 1 - 3
  CHECK(deficiency(parse_network(kTwoComponent)) == 1); // 4 - 2 - 1
}

TEST_CASE("deficiency non-negative on random networks") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 1 + rng() % 3;
    std::string text = "species";
    for (int j = 0; j < m; ++j) text += " A" + std::to_string(j + 1);
    text += "\n";
    std::set<std::pair<std::string, std::string>> seen;
    int lines = 1 + rng() % 4;
    auto side = [&] {
      std::string s;
      bool any = false;
      for (int j = 0; j < m; ++j) {
        int c = rng() % 3;
        if (!c) continue;
        if (any) s += " + ";
        if (c > 1) s += std::to_string(c) + " ";
        s += "A" + std::to_string(j + 1);
        any = true;
      }
      return any ? s : std::string("0");
    };
    int made = 0;
    for (int k = 0; k < lines * 4 && made < lines; ++k) {
      std::string a = side(), b = side();
      if (a == b || seen.count({a, b})) continue;
      seen.insert({a, b});
      text += a + " -> " + b + "; 1\n";
      ++made;
    }
    if (!made) continue;
    CHECK(deficiency(parse_network(text)) >= 0);
  }
}

TEST_CASE("chain decomposes into the three adjacent 2-cycles") {
  auto net = parse_network(kChain4);
  auto d = cycle_decomposition(net, flux_at_equilibrium(net));
  REQUIRE(d.cycles.size() == 3);
  CHECK(cycle_of(d, 0) == std::vector<int>{0, 1, 0});
  CHECK(cycle_of(d, 1) == std::vector<int>{1, 2, 1});
  CHECK(cycle_of(d, 2) == std::vector<int>{2, 3, 2});
}

TEST_CASE("mixed network decomposes into a 2-cycle and a 4-cycle") {
  auto net = parse_network(kMixedCycle);
  auto d = cycle_decomposition(net, flux_at_equilibrium(net));
  REQUIRE(d.cycles.size() == 2);
  CHECK(cycle_of(d, 0) == std::vector<int>{0, 1, 0});
  CHECK(cycle_of(d, 1) == std::vector<int>{0, 1, 2, 3, 0});
}

TEST_CASE("single reversible reaction gives one 2-cycle with flux weight") {
  auto net = parse_network("A1 <-> A2; 2, 3\n");
  auto eq = find_equilibrium(net);
  REQUIRE(eq.has_value());
  auto flux = equilibrium_flux(net, eq->x_star);
  auto d = cycle_decomposition(net, flux);
  REQUIRE(d.cycles.size() == 1);
  CHECK(cycle_of(d, 0) == std::vector<int>{0, 1, 0});
  CHECK(d.cycles[0].second == doctest::Approx(2 * eq->x_star[0]));
}

TEST_CASE("decomposition reconstructs the flux and respects cycle shape") {
  for (const char* text : {kChain4, kMixedCycle}) {
    auto net = parse_network(text);
    auto flux = flux_at_equilibrium(net);
    auto d = cycle_decomposition(net, flux);
    int n = net.complex_count();
    std::vector<std::vector<double>> rebuilt(n, std::vector<double>(n, 0.0));
    for (const auto& [cycle, w] : d.cycles) {
      CHECK(w > 0);
      const auto& idx = cycle.indices;
      REQUIRE(idx.front() == idx.back());
      std::set<int> interior(idx.begin(), idx.end() - 1);
      CHECK(static_cast<int>(interior.size()) == cycle.length());
      for (int p = 0; p < cycle.length(); ++p) {
        bool edge_exists = false;
        for (const auto& r : net.reactions)
          edge_exists = edge_exists ||
                        (r.source == idx[p] && r.target == idx[p + 1]);
        CHECK(edge_exists);
        rebuilt[idx[p]][idx[p + 1]] += w;
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(rebuilt[i][j] ==
              doctest::Approx(flux[i][j]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("unbalanced flux rejected") {
  auto net = parse_network("A1 <-> A2; 1, 1\n");
  std::vector<std::vector<double>> bad = {{0, 2}, {1, 0}};
  CHECK_THROWS_AS(cycle_decomposition(net, bad), std::invalid_argument);
}

TEST_CASE("exhaustive decomposition includes the canonical one first") {
  auto net = parse_network(kMixedCycle);
  auto flux = flux_at_equilibrium(net);
  auto canonical = cycle_decomposition(net, flux);
  auto all = cycle_decompositions_exhaustive(net, flux, 16);
  REQUIRE(!all.empty());
  REQUIRE(all[0].cycles.size() == canonical.cycles.size());
  for (size_t i = 0; i < canonical.cycles.size(); ++i)
    CHECK(all[0].cycles[i].first.indices == canonical.cycles[i].first.indices);
  // every alternative also reconstructs the flux
  int n = net.complex_count();
  for (const auto& d : all) {
    std::vector<std::vector<double>> rebuilt(n, std::vector<double>(n, 0.0));
    for (const auto& [cycle, w] : d.cycles)
      for (int p = 0; p < cycle.length(); ++p)
        rebuilt[cycle.indices[p]][cycle.indices[p + 1]] += w;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(rebuilt[i][j] ==
              doctest::Approx(flux[i][j]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("weak reversibility invariant under species relabeling") {
  auto a = parse_network("species X Y\nX -> Y; 1\nY -> X; 1\n");
  auto b = parse_network("species Y X\nX -> Y; 1\nY -> X; 1\n");
  CHECK(is_weakly_reversible(a) == is_weakly_reversible(b));
}
