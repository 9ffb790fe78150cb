#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "absau/term.hpp"

namespace absau {

/// Find sigma with normalize(pattern sigma) == subject. Subject variables are
/// opaque constants.
struct MatchProblem {
  Term pattern;
  Term subject;
};

/// Backtracking matcher modulo Abs. An f-pattern against eps_f tries the
/// first argument collapsing, then the second; a variable that only occurs
/// beside a collapsing argument is bound to that eps_f.
std::optional<Substitution> match_abs(const MatchProblem& p, const Theory& theory);

/// <r, sigma, rho> with r sigma = s and r rho = t modulo Abs.
struct SolutionTriple {
  Term generalization;
  Substitution left_subst;
  Substitution right_subst;
};

std::optional<SolutionTriple> is_generalization(const Term& r, const Term& s, const Term& t,
                                                const Theory& theory);

/// r1 ⪯ r2: r2 is an instance of r1 modulo Abs.
bool more_general_eq(const Term& r1, const Term& r2, const Theory& theory);

/// r1 ≃ r2: each is an instance of the other.
bool equivalent(const Term& r1, const Term& r2, const Theory& theory);

/// No member is ⪯ another member.
bool check_pairwise_incomparable(const std::vector<Term>& terms, const Theory& theory);

struct OracleOptions {
  std::size_t size_bound = 7;
  std::size_t var_count = 1;
  /// Candidate terms generated before giving up with InputError.
  std::size_t max_candidates = 20'000'000;
};

/// Minimal complete set of generalizations among the normal terms of length
/// <= size_bound over the signature, the input variables (as constants) and
/// var_count pool variables. Keeps the most specific classes; each class is
/// represented by its least canonically renamed member. In term order.
std::vector<Term> brute_force_mcsg(const Term& s, const Term& t, const Theory& theory,
                                   const OracleOptions& opts);

/// Number of candidate terms brute_force_mcsg would examine.
std::size_t oracle_candidate_count(const Term& s, const Term& t, const Theory& theory,
                                   const OracleOptions& opts);

}  // namespace absau
