#pragma once

#include <string>
#include <vector>

#include "absau/term.hpp"

namespace absau {

/// Labeled anti-unification equation `left =[label]= right`.
struct Aue {
  std::string label;
  Term left;
  Term right;

  bool is_wild() const { return left.is_wildcard() || right.is_wildcard(); }
  /// The side that is not the wild card. Only meaningful for wild AUEs.
  const Term& non_wild_side() const { return left.is_wildcard() ? right : left; }

  friend bool operator==(const Aue&, const Aue&) = default;
};

enum class AueClass { Solved, Wild, Dec, ExpLeft, ExpRight };

const char* to_string(AueClass c);

/// Which rule family applies to a normal AUE. Throws InvariantError on
/// a side that is not in Abs-normal form.
AueClass classify_aue(const Aue& aue, const Theory& theory);

/// Quadruple <A; S; T; theta>: unsolved AUEs, the store of solved AUEs, the
/// abstraction of wild AUEs, and the substitution mapping labels to their
/// generalizations. Lists keep creation order.
struct Configuration {
  std::vector<Aue> unsolved;
  std::vector<Aue> store;
  std::vector<Aue> abstraction;
  Substitution subst;

  bool is_final() const { return unsolved.empty(); }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

std::vector<std::string> labels(const std::vector<Aue>& aues);

/// <A; {}; {}; iota> with iota = {x_st -> x | x in labels(A)}.
/// Throws InputError on duplicate labels or reserved start-label names.
Configuration initial_configuration(std::vector<Aue> aues);

/// Every violated configuration invariant, as a readable message. Empty means
/// the configuration is valid. `opaque` lists input-term variables, which are
/// treated as constants and so excluded from the Rvar(theta) check.
std::vector<std::string> validate_configuration(const Configuration& cfg, const Theory& theory,
                                                const VarSet& opaque = {});

/// Variables of the AUE sides: the opaque input variables of a problem.
VarSet input_variables(const Configuration& cfg);

}  // namespace absau
