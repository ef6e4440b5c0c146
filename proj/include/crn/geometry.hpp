#pragma once

#include "crn/network.hpp"
#include "crn/ratlp.hpp"

namespace crn {

/// Species-index set I (0-based, sorted) such that every reaction
/// producing a species of I also consumes a species of I.
struct SiphonSet {
  std::vector<int> indices;
  bool minimal = false;
  bool operator==(const SiphonSet& o) const { return indices == o.indices; }
};

/// Complex ordering mu(0) > mu(1) > ... > mu(n-1), 0-based.
using Ordering = std::vector<int>;

struct StratumRecord {
  Ordering ordering;
  bool nonempty = false;
  RatVec witness_y;  // exact point of the stratum in log coordinates
};

struct FaceAdjacency {
  Ordering ordering;
  SiphonSet siphon;
  bool adjacent = false;
  RatVec alpha;     // when adjacent: alpha_i <= -1 on I, 0 off I, <d,alpha> >= 0
  RatVec farkas_v;  // otherwise: v = sum lambda_i d_i, v >= 0 on I, one strict
};

inline constexpr int kMaxSiphonSpecies = 20;
inline constexpr int kMaxOrderingComplexes = 10;

/// All nonempty semi-locking sets, minimal ones flagged, sorted by size
/// then lexicographically. Brute force over subsets; throws on
/// m > max_species.
std::vector<SiphonSet> enumerate_siphons(const ReactionNetwork& net,
                                         int max_species = kMaxSiphonSpecies);

bool is_siphon(const ReactionNetwork& net, const std::vector<int>& indices);

/// Nonemptiness of the stratum of mu: solvability of the strict system
/// <z_mu(i) - z_mu(i+1), y> > 0 in log coordinates. Independent of x*.
StratumRecord stratum_nonempty(const ReactionNetwork& net, const Ordering& mu);

/// Decides closure(S_mu) intersects L_I via the alpha system (normalized
/// alpha_i <= -1 on I): feasible alpha gives adjacency, the Farkas
/// alternative gives the separating v. Requires a nonempty stratum.
FaceAdjacency face_adjacent(const ReactionNetwork& net, const Ordering& mu,
                            const SiphonSet& siphon);

/// M_I: every ordering with a nonempty stratum whose closure meets L_I.
/// Depth-first over ordering prefixes with feasibility pruning; throws on
/// n > max_complexes. Output sorted lexicographically.
std::vector<Ordering> enumerate_adjacent_orderings(
    const ReactionNetwork& net, const SiphonSet& siphon,
    int max_complexes = kMaxOrderingComplexes);

/// All orderings with nonempty strata (same pruning and cap).
std::vector<StratumRecord> enumerate_nonempty_strata(
    const ReactionNetwork& net, int max_complexes = kMaxOrderingComplexes);

}  // namespace crn
