#pragma once

#include "crn/network.hpp"

namespace crn {

struct LinkageClasses {
  std::vector<std::vector<int>> classes;  // complex indices, each sorted
  std::vector<int> class_of;              // complex -> class id
  int count() const { return static_cast<int>(classes.size()); }
};

/// Connected components of the undirected complex graph.
LinkageClasses linkage_classes(const ReactionNetwork& net);

/// True iff every linkage class is strongly connected in the directed
/// reaction graph.
bool is_weakly_reversible(const ReactionNetwork& net);

/// n - l - s; never negative on a valid network.
int deficiency(const ReactionNetwork& net);

/// Complex-index sequence nu_0, ..., nu_l with nu_0 = nu_l, all interior
/// members distinct and every consecutive pair an existing reaction.
struct Cycle {
  std::vector<int> indices;
  int length() const { return static_cast<int>(indices.size()) - 1; }
};

struct CycleDecomposition {
  std::vector<std::pair<Cycle, double>> cycles;  // (cycle, weight > 0)
};

/// Decomposes a complex balanced flux matrix (flux[i][j] > 0 on reactions)
/// into weighted directed cycles. Greedy and canonical: repeatedly extract
/// the lexicographically smallest cycle in the positive-residual support,
/// subtracting its minimum edge weight. Throws std::invalid_argument when
/// the flux is not balanced at every complex (tolerance 1e-9 relative).
CycleDecomposition cycle_decomposition(const ReactionNetwork& net,
                                       const std::vector<std::vector<double>>& flux);

/// Alternative decompositions of the same flux, produced by branching on
/// the cycle choice at each greedy step; at most max_count results and the
/// canonical decomposition comes first. Probes the certification's
/// dependence on the (non-unique) decomposition.
std::vector<CycleDecomposition> cycle_decompositions_exhaustive(
    const ReactionNetwork& net, const std::vector<std::vector<double>>& flux,
    int max_count);

}  // namespace crn
