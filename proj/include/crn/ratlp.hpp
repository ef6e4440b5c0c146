#pragma once

#include <stdexcept>
#include <vector>

#include "crn/rational.hpp"

namespace crn {

enum class Rel { LT, LE, EQ, GE, GT };

struct LinearConstraint {
  RatVec coeffs;
  Rel rel = Rel::GE;
  Rat rhs = 0;
};

/// Outcome of an exact feasibility query. Exactly one of witness /
/// certificate is meaningful. A witness satisfies every constraint in
/// exact arithmetic. A certificate is a vector of multipliers, one per
/// input constraint (non-negative except on equality rows, where the
/// sign is free), whose combination yields 0 > 0 or 0 >= positive.
struct FeasibilityResult {
  bool feasible = false;
  RatVec witness;
  RatVec certificate;
};

/// Decides { c_k applies to x in R^dim } by exact two-phase simplex with
/// Bland's rule. Strict inequalities are handled by a margin variable
/// (find x, t with slack >= t, t <= 1, maximize t), never by perturbation.
/// Deterministic for a fixed constraint ordering. Homogeneous witnesses
/// and all certificates are scaled so the largest absolute entry is 1.
FeasibilityResult solve_feasibility(const std::vector<LinearConstraint>& constraints,
                                    int dim);

/// Decides existence of y with <d_i, y> > 0 for every direction d_i.
FeasibilityResult solve_strict_direction(const std::vector<RatVec>& directions);

/// Exact substitution check of a witness against every constraint.
bool satisfies_all(const std::vector<LinearConstraint>& constraints,
                   const RatVec& witness);

/// Exact validity check of a Farkas certificate: the multiplier
/// combination must cancel all variables and contradict the right-hand
/// sides (0 > 0, or 0 >= positive via a strict row with positive weight).
bool certificate_valid(const std::vector<LinearConstraint>& constraints,
                       const RatVec& certificate);

}  // namespace crn
