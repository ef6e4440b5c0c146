#pragma once

#include <optional>

#include "crn/graph.hpp"
#include "crn/network.hpp"

namespace crn {

/// Positive kernel element of the kinetic balance system, one entry per
/// complex: sum_j k(j,i) psi_j = psi_i sum_j k(i,j), normalized so the
/// first complex of each linkage class has psi = 1. Exists iff the
/// network is weakly reversible.
struct ComplexPotential {
  RatVec psi;
};

std::optional<ComplexPotential> complex_potential(const ReactionNetwork& net);

struct EquilibriumResult {
  std::vector<double> x_star;    // positive equilibrium
  double residual = 0;           // max relative violation of complex balance
  bool complex_balanced = false;
  bool detailed_balanced = false;
};

/// Solves for a positive equilibrium whose complex monomials realize the
/// potential psi (log-linear least squares). complex_balanced reflects
/// whether the log-linear system is consistent (residual <= 1e-9) or the
/// network is deficiency-zero weakly reversible (structural guarantee).
/// Returns nullopt when no positive kernel exists or the system is not
/// complex balanced for these rates.
std::optional<EquilibriumResult> find_equilibrium(const ReactionNetwork& net);

/// The unique equilibrium of the compatibility class of x0: x_hat * exp(w)
/// with w in S-perp and x* - x0 in S, by damped Newton on the strictly
/// convex dual. Gradient norm at exit <= 1e-12.
std::vector<double> project_to_class(const ReactionNetwork& net,
                                     const EquilibriumResult& x_hat,
                                     const std::vector<double>& x0);

/// Pairwise flux cancellation k(i,j) x^{z_i} = k(j,i) x^{z_j} within 1e-9
/// relative; a missing reverse reaction fails the pair.
bool check_detailed_balance(const ReactionNetwork& net,
                            const std::vector<double>& x);

/// Equilibrium flux matrix kappa(i,j) = k(i,j) x^{z_i}.
std::vector<std::vector<double>> equilibrium_flux(const ReactionNetwork& net,
                                                  const std::vector<double>& x);

/// Max relative violation of the complex balance condition at x.
double complex_balance_residual(const ReactionNetwork& net,
                                const std::vector<double>& x);

}  // namespace crn
