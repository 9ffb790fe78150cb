#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absau/engine.hpp"

namespace absau {

/// Enumerates normal terms over the signature plus a set of variables, by
/// increasing length then term order. Results are cached per length.
class NormalTermEnumerator {
 public:
  NormalTermEnumerator(const Theory& theory, VarSet vars);

  /// Every normal term of exactly this length.
  const std::vector<Term>& of_length(std::size_t n);

 private:
  void extend(std::size_t n);

  std::vector<std::pair<std::string, std::size_t>> symbols_;
  VarSet vars_;
  const Theory* theory_;
  std::vector<std::vector<Term>> by_length_;
};

/// ↑(target, sigma) restricted to terms of length <= size_bound. Opaque
/// variables are input variables, treated as constants.
struct AbstractionQuery {
  Term target;
  Substitution sigma;
  std::size_t size_bound = 0;
  VarSet opaque;
};

/// Members of the abstraction set within the bound, in term order. Built by
/// the recursive characterization: a label whose image is the target, the
/// same head with pointwise members, or for a target eps_f an f-application
/// with one collapsing argument and an arbitrary normal term beside it.
std::vector<Term> abstraction_set(const AbstractionQuery& q, const Theory& theory);

/// Direct membership test by the defining conditions.
bool in_abstraction_set(const Term& r, const Term& target, const Substitution& sigma,
                        const Theory& theory, const VarSet& opaque = {});

/// True iff ↑(target, sigma) is finite: no subterm eps_f of the target has a
/// label in Dom(sigma) mapped to eps_f.
bool is_abstraction_finite(const Term& target, const Substitution& sigma, const Theory& theory);

/// The abstraction set ↑_y(T, S) of one wild label: ρ_S for `* = t`,
/// σ_S for `s = *`.
struct WildLabelQuery {
  std::string label;
  Term target;
  Substitution sigma;
  bool finite = true;
};

std::vector<WildLabelQuery> wild_label_queries(const std::vector<Aue>& abstraction,
                                               const std::vector<Aue>& store,
                                               const Theory& theory);

/// Ψ(T, S) within the bound: the Cartesian product of the per-label sets.
/// T empty gives {id}.
std::vector<Substitution> psi_substitutions(const std::vector<Aue>& abstraction,
                                            const std::vector<Aue>& store, const Theory& theory,
                                            std::size_t bound, const VarSet& opaque = {});

/// The possibly infinite C_AUnif of one problem, kept symbolically.
class GeneralizationSet {
 public:
  struct Entry {
    Configuration config;
    std::vector<WildLabelQuery> wild;
  };

  GeneralizationSet() = default;

  /// Derives, merges and prepares the per-label queries.
  static GeneralizationSet build(const Term& s, const Term& t, const Theory& theory,
                                 const DeriveOptions& opts = {});

  const std::vector<Entry>& entries() const { return entries_; }
  const std::string& start() const { return start_; }
  const VarSet& opaque() const { return opaque_; }

  /// True iff every wild label of every configuration has a finite set.
  bool finite() const;

  /// x θ τ for every configuration and every τ whose components have
  /// length <= bound. Deduplicated, in term order.
  std::vector<Term> up_to(std::size_t bound, unsigned threads = 1) const;

  /// True iff some wild label has members longer than `bound`, so up_to
  /// misses part of the set.
  bool truncated_at(std::size_t bound) const;

  /// Whether `g` is (a renaming of) some x θ τ with all τ components of
  /// length <= bound. Does not enumerate.
  bool contains(const Term& g, std::size_t bound) const;

 private:
  Theory theory_;
  std::string start_;
  VarSet opaque_;
  std::vector<Entry> entries_;
};

/// Incremental view of a GeneralizationSet: each call yields the members that
/// first appear at the next bound.
class GeneralizationStream {
 public:
  GeneralizationStream(const GeneralizationSet& set, std::size_t first_bound = 1)
      : set_(&set), bound_(first_bound) {}

  struct Batch {
    std::size_t bound;
    std::vector<Term> fresh;
  };
  Batch next();

 private:
  const GeneralizationSet* set_;
  std::size_t bound_;
  std::vector<Term> seen_;
};

/// One-shot bounded enumeration of C_AUnif(s, t).
std::vector<Term> enumerate_generalizations(const Term& s, const Term& t, const Theory& theory,
                                            std::size_t bound, const DeriveOptions& opts = {});

/// Linear variant: no Mer, each wild label replaced by the non-wild side of
/// its AUE. Variables renamed y1, y2, ... by first occurrence; deduplicated,
/// in term order.
std::vector<Term> linear_generalizations(const Term& s, const Term& t, const Theory& theory,
                                         const DeriveOptions& opts = {});

/// The linear generalization read off one Mer-free final configuration.
Term linear_generalization_of(const Configuration& final_cfg, const std::string& start);

/// Renames variables outside `keep` to y1, y2, ... in order of first
/// occurrence.
Term rename_canonically(const Term& t, const VarSet& keep = {});

}  // namespace absau
