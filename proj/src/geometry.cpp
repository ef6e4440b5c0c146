#include "crn/geometry.hpp"

#include <algorithm>
#include <functional>

namespace crn {

namespace {

IntVec direction(const ReactionNetwork& net, int hi, int lo) {
  const IntVec& a = net.complexes[hi].z;
  const IntVec& b = net.complexes[lo].z;
  IntVec d(a.size());
  for (size_t j = 0; j < a.size(); ++j) d[j] = a[j] - b[j];
  return d;
}

std::vector<RatVec> prefix_directions(const ReactionNetwork& net,
                                      const Ordering& prefix) {
  std::vector<RatVec> ds;
  for (size_t i = 0; i + 1 < prefix.size(); ++i)
    ds.push_back(to_ratvec(direction(net, prefix[i], prefix[i + 1])));
  return ds;
}

// alpha_i <= -1 on I, alpha_i = 0 off I, <d, alpha> >= 0 for each d.
// Constraint layout: m per-coordinate rows first, then the d rows, so a
// Farkas certificate's tail multipliers are the lambda of the v-construction.
std::vector<LinearConstraint> alpha_system(int m, const std::vector<int>& siphon,
                                           const std::vector<RatVec>& dirs) {
  std::vector<bool> in_i(m, false);
  for (int i : siphon) in_i[i] = true;
  std::vector<LinearConstraint> cs;
  for (int j = 0; j < m; ++j) {
    LinearConstraint c;
    c.coeffs.assign(m, Rat(0));
    c.coeffs[j] = 1;
    c.rel = in_i[j] ? Rel::LE : Rel::EQ;
    c.rhs = in_i[j] ? Rat(-1) : Rat(0);
    cs.push_back(std::move(c));
  }
  for (const auto& d : dirs) cs.push_back({d, Rel::GE, Rat(0)});
  return cs;
}

}  // namespace

bool is_siphon(const ReactionNetwork& net, const std::vector<int>& indices) {
  if (indices.empty()) return false;
  std::vector<bool> in_i(net.species_count(), false);
  for (int i : indices) in_i[i] = true;
  for (const auto& r : net.reactions) {
    const IntVec& src = net.complexes[r.source].z;
    const IntVec& dst = net.complexes[r.target].z;
    bool produces = false, consumes = false;
    for (int j = 0; j < net.species_count(); ++j) {
      if (!in_i[j]) continue;
      produces = produces || dst[j] > 0;
      consumes = consumes || src[j] > 0;
    }
    if (produces && !consumes) return false;
  }
  return true;
}

std::vector<SiphonSet> enumerate_siphons(const ReactionNetwork& net,
                                         int max_species) {
  int m = net.species_count();
  if (m > max_species)
    throw std::length_error("siphon enumeration capped at " +
                            std::to_string(max_species) + " species");
  std::vector<SiphonSet> out;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> idx;
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) idx.push_back(j);
    if (is_siphon(net, idx)) out.push_back({idx, false});
  }
  std::sort(out.begin(), out.end(), [](const SiphonSet& a, const SiphonSet& b) {
    if (a.indices.size() != b.indices.size())
      return a.indices.size() < b.indices.size();
    return a.indices < b.indices;
  });
  for (auto& s : out) {
    s.minimal = true;
    for (const auto& other : out) {
      if (other.indices.size() >= s.indices.size() || other == s) continue;
      if (std::includes(s.indices.begin(), s.indices.end(),
                        other.indices.begin(), other.indices.end())) {
        s.minimal = false;
        break;
      }
    }
  }
  return out;
}

StratumRecord stratum_nonempty(const ReactionNetwork& net, const Ordering& mu) {
  if (static_cast<int>(mu.size()) != net.complex_count())
    throw std::invalid_argument("ordering length must equal complex count");
  StratumRecord rec;
  rec.ordering = mu;
  auto res = solve_strict_direction(prefix_directions(net, mu));
  rec.nonempty = res.feasible;
  if (res.feasible) rec.witness_y = res.witness;
  return rec;
}

FaceAdjacency face_adjacent(const ReactionNetwork& net, const Ordering& mu,
                            const SiphonSet& siphon) {
  auto rec = stratum_nonempty(net, mu);
  if (!rec.nonempty)
    throw std::invalid_argument("face adjacency requires a nonempty stratum");
  int m = net.species_count();
  auto dirs = prefix_directions(net, mu);
  auto cs = alpha_system(m, siphon.indices, dirs);
  auto res = solve_feasibility(cs, m);

  FaceAdjacency adj;
  adj.ordering = mu;
  adj.siphon = siphon;
  adj.adjacent = res.feasible;
  if (res.feasible) {
    adj.alpha = res.witness;
  } else {
    // v = sum lambda_i d_i from the multipliers on the direction rows.
    adj.farkas_v.assign(m, Rat(0));
    for (size_t i = 0; i < dirs.size(); ++i) {
      const Rat& lambda = res.certificate[m + i];
      for (int j = 0; j < m; ++j) adj.farkas_v[j] += lambda * dirs[i][j];
    }
  }
  return adj;
}

namespace {

// Shared prefix DFS over orderings. Both prune tests are monotone in the
// prefix: a strict system or alpha system that is infeasible stays
// infeasible as pairs are appended.
void ordering_dfs(const ReactionNetwork& net, const std::vector<int>* siphon,
                  Ordering& prefix, std::vector<bool>& used,
                  const std::function<void(const Ordering&)>& emit) {
  int n = net.complex_count();
  if (static_cast<int>(prefix.size()) == n) {
    emit(prefix);
    return;
  }
  for (int next = 0; next < n; ++next) {
    if (used[next]) continue;
    prefix.push_back(next);
    bool viable = true;
    if (prefix.size() >= 2) {
      auto dirs = prefix_directions(net, prefix);
      viable = solve_strict_direction(dirs).feasible;
      if (viable && siphon) {
        auto cs = alpha_system(net.species_count(), *siphon, dirs);
        viable = solve_feasibility(cs, net.species_count()).feasible;
      }
    } else if (siphon) {
      auto cs = alpha_system(net.species_count(), *siphon, {});
      viable = solve_feasibility(cs, net.species_count()).feasible;
    }
    if (viable) {
      used[next] = true;
      ordering_dfs(net, siphon, prefix, used, emit);
      used[next] = false;
    }
    prefix.pop_back();
  }
}

void check_ordering_cap(const ReactionNetwork& net, int max_complexes) {
  if (net.complex_count() > max_complexes)
    throw std::length_error("ordering enumeration capped at " +
                            std::to_string(max_complexes) + " complexes");
}

}  // namespace

std::vector<Ordering> enumerate_adjacent_orderings(const ReactionNetwork& net,
                                                   const SiphonSet& siphon,
                                                   int max_complexes) {
  check_ordering_cap(net, max_complexes);
  std::vector<Ordering> out;
  Ordering prefix;
  std::vector<bool> used(net.complex_count(), false);
  ordering_dfs(net, &siphon.indices, prefix, used,
               [&](const Ordering& mu) { out.push_back(mu); });
  return out;  // DFS order is already lexicographic
}

std::vector<StratumRecord> enumerate_nonempty_strata(const ReactionNetwork& net,
                                                     int max_complexes) {
  check_ordering_cap(net, max_complexes);
  std::vector<StratumRecord> out;
  Ordering prefix;
  std::vector<bool> used(net.complex_count(), false);
  ordering_dfs(net, nullptr, prefix, used, [&](const Ordering& mu) {
    out.push_back(stratum_nonempty(net, mu));
  });
  return out;
}

}  // namespace crn
