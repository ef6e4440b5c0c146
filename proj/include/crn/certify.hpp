#pragma once

#include <optional>
#include <string>

#include "crn/equilibrium.hpp"
#include "crn/geometry.hpp"
#include "crn/graph.hpp"

namespace crn {

/// Deduplicated partial sums sum_{j<=k} s_{mu_i(j)} over the cycles of a
/// decomposition and the orderings of M_I, with s taken next-in-cycle
/// minus current.
struct PartialSumSet {
  SiphonSet siphon;
  std::vector<IntVec> vectors;
};

enum class CertCondition { Condition1, Condition2, TwoDimensional, OriginExclusion };

struct SiphonCertificate {
  SiphonSet siphon;
  CertCondition condition = CertCondition::Condition2;
  bool certified = false;
  std::optional<RatVec> alpha;
  std::optional<PartialSumSet> partial_sums;
  std::optional<RatVec> farkas_witness;  // when uncertified
  int ordering_count = 0;                // |M_I|
  std::vector<Ordering> orderings;       // M_I itself
  bool condition1_feasible = false;      // diagnostic
  int decomposition_index = 0;           // which decomposition certified
};

enum class Verdict { GloballyStable, Inconclusive, NotComplexBalanced };

struct StabilityCertificate {
  Verdict verdict = Verdict::Inconclusive;
  bool two_dimensional = false;
  std::optional<EquilibriumResult> equilibrium;
  std::vector<SiphonCertificate> entries;
  CycleDecomposition decomposition;
  int stoichiometric_dimension = 0;
};

/// Restriction of a global complex ordering to a cycle, reindexed to the
/// cycle's positions 0..l-1 in cycle order.
Ordering induced_cycle_ordering(const Ordering& mu, const Cycle& cycle);

PartialSumSet build_partial_sum_set(const ReactionNetwork& net,
                                    const CycleDecomposition& decomposition,
                                    const std::vector<Ordering>& m_i,
                                    const SiphonSet& siphon);

/// Condition 1: one alpha works for the full chains of every mu in M_I.
FeasibilityResult check_condition1(const ReactionNetwork& net,
                                   const std::vector<Ordering>& m_i,
                                   const SiphonSet& siphon);

/// Condition 2: one alpha with <v, alpha> <= 0 for every partial sum v.
FeasibilityResult check_condition2(const PartialSumSet& p,
                                   int species_count);

struct CertifyOptions {
  bool exhaustive_decomposition = false;
  int max_decompositions = 64;
  int max_species = kMaxSiphonSpecies;
  int max_complexes = kMaxOrderingComplexes;
};

StabilityCertificate certify_global_stability(const ReactionNetwork& net,
                                              const CertifyOptions& opts = {});

/// JSON rendering of a certificate; rationals appear as exact "p/q"
/// strings, floats only in the equilibrium block.
std::string certificate_to_json(const ReactionNetwork& net,
                                const StabilityCertificate& cert);

std::string condition_name(CertCondition c);
std::string verdict_name(Verdict v);

}  // namespace crn
