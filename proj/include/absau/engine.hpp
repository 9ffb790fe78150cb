#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absau/config.hpp"

namespace absau {

enum class RuleId { Dec, Sol, ExpLA1, ExpLA2, ExpRA1, ExpRA2, Mer };

const char* to_string(RuleId rule);

struct RuleApplication {
  RuleId rule;
  std::string target;

  friend bool operator==(const RuleApplication&, const RuleApplication&) = default;
};

/// Rules applicable to `cfg`.
///
/// With unsolved AUEs left, only the first one (creation order) is
/// considered and the result lists the rule choices for it. With none left,
/// the result lists one Mer target per store label that has a duplicate with
/// a later label. Empty iff `cfg` is final.
std::vector<RuleApplication> applicable_rules(const Configuration& cfg, const Theory& theory);

/// One step of the rule system. Fresh labels continue after the largest yN
/// label present in `cfg`. Throws InvariantError if the rule does not apply.
Configuration apply_rule(const Configuration& cfg, RuleId rule, const std::string& target,
                         const Theory& theory);

struct DeriveOptions {
  /// Guard against runaway derivations; 0 means unlimited.
  std::size_t max_steps = 0;
  /// Drop Mer (the linear variant).
  bool disable_merge = false;
  /// Run validate_configuration after every step; throws InvariantError.
  bool validate_steps = false;
  /// Worker threads for the branch search. Output does not depend on it.
  unsigned threads = 1;
};

struct DerivationStep {
  RuleId rule;
  std::string target;
  Configuration result;
};

/// One branch of the search, from the initial configuration to a final one.
struct Derivation {
  Configuration initial;
  std::vector<DerivationStep> steps;

  const Configuration& final_configuration() const {
    return steps.empty() ? initial : steps.back().result;
  }
};

/// Every final configuration reachable from `cfg`, canonically renamed,
/// deduplicated and sorted.
std::vector<Configuration> derive_all(const Configuration& cfg, const Theory& theory,
                                      const DeriveOptions& opts = {});

/// The raw derivations behind derive_all, one per search leaf, in search
/// order and with the labels as created.
std::vector<Derivation> derive_traces(const Configuration& cfg, const Theory& theory,
                                      const DeriveOptions& opts = {});

/// Renames labels canonically: store and abstraction labels become y1, y2, ...
/// in order of first occurrence in the start-label generalizations, other
/// Dom(theta) labels follow, ordered by their images.
Configuration canonicalize(const Configuration& cfg);

/// Renames store labels so that equal store AUEs carry the same label across
/// all configurations and distinct ones differ. Non-store labels are
/// renumbered after the shared store labels.
std::vector<Configuration> merge_final(const std::vector<Configuration>& configs);

/// (sigma_D, rho_D): each store/abstraction label to its left/right side.
/// Wild labels map to the wild card on their wild side.
std::pair<Substitution, Substitution> solution_substitutions(const Configuration& cfg);

/// The same, restricted to store labels (sigma_S, rho_S).
std::pair<Substitution, Substitution> store_substitutions(const Configuration& cfg);

/// start_label . theta. Throws InputError for a label outside Dom(theta).
Term computed_generalization(const Configuration& cfg, const std::string& start);

/// Start labels in Dom(theta), in name order.
std::vector<std::string> start_labels(const Configuration& cfg);

/// Single-problem convenience: <{s =[y0]= t}; {}; {}; {y0_st -> y0}>.
/// Inputs are normalized; variables from the reserved label namespace are
/// rejected with InputError.
Configuration problem_configuration(const Term& s, const Term& t, const Theory& theory);

/// The start label used by problem_configuration.
std::string problem_start_label();

}  // namespace absau
