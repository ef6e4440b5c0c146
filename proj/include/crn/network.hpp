#pragma once

#include <string>
#include <vector>

#include "crn/rational.hpp"

namespace crn {

struct ParseError : std::runtime_error {
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct SpeciesTable {
  std::vector<std::string> names;
  int count() const { return static_cast<int>(names.size()); }
  int index(const std::string& name) const;  // -1 when absent
};

/// Stoichiometric coefficient vector of one complex; the zero vector is
/// the empty complex.
struct Complex {
  IntVec z;
  bool operator==(const Complex&) const = default;
};

struct Reaction {
  int source = 0;
  int target = 0;
  Rat rate;  // > 0, exact
};

struct ReactionNetwork {
  SpeciesTable species;
  std::vector<Complex> complexes;
  std::vector<Reaction> reactions;

  int species_count() const { return species.count(); }
  int complex_count() const { return static_cast<int>(complexes.size()); }
  int reaction_count() const { return static_cast<int>(reactions.size()); }

  /// z_target - z_source of reaction k.
  IntVec reaction_vector(int k) const;
  /// Human-readable complex, e.g. "A1 + 2 A2" or "0".
  std::string complex_str(int i) const;
};

/// Parses the line-oriented network grammar:
///   species A1 A2 ...                      (optional, fixes ordering)
///   complex -> complex ; rate              (irreversible)
///   complex <-> complex ; rate, rate       (reversible, fwd then bwd)
/// with complex := "0" | [int] ident ("+" [int] ident)* and "#" comments.
ReactionNetwork parse_network(const std::string& text);

/// Canonical text form; parse(serialize(net)) reproduces net exactly.
std::string serialize_network(const ReactionNetwork& net);

/// Maximal linearly independent subset of the reaction vectors: an
/// integer basis of the stoichiometric subspace S.
struct StoichiometricBasis {
  std::vector<IntVec> vectors;
  int dimension() const { return static_cast<int>(vectors.size()); }
};

StoichiometricBasis stoichiometric_subspace(const ReactionNetwork& net);

/// Integer basis of the orthogonal complement of S; each basis vector is
/// a conserved quantity of the dynamics.
std::vector<IntVec> conserved_quantities(const ReactionNetwork& net);

/// Mass-action vector field at x >= 0, with 0^0 := 1 on the boundary.
std::vector<double> mass_action_rhs(const ReactionNetwork& net,
                                    const std::vector<double>& x);

/// x^z with the same boundary convention.
double monomial(const std::vector<double>& x, const IntVec& z);

}  // namespace crn
