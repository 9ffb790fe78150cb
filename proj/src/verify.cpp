#include "absau/verify.hpp"

#include <algorithm>
#include <map>

#include "absau/abstraction.hpp"

namespace absau {

namespace {

struct MatchState {
  std::map<std::string, Term> bound;
  // Default for variables seen only beside a collapsing argument.
  std::map<std::string, std::string> defaults;
};

struct Goal {
  Term pattern;
  Term subject;
  // Set for an unconstrained pattern: its variables default to this eps.
  std::string free_under;
};

class Matcher {
 public:
  explicit Matcher(const Theory& theory) : theory_(theory) {}

  std::optional<MatchState> solve(std::vector<Goal> goals, MatchState state) const {
    while (!goals.empty()) {
      Goal g = std::move(goals.back());
      goals.pop_back();
      if (!g.free_under.empty()) {
        for (const std::string& v : vars_of(g.pattern)) state.defaults.emplace(v, g.free_under);
        continue;
      }
      const Term& p = g.pattern;
      const Term& s = g.subject;
      if (p.is_var()) {
        auto [it, inserted] = state.bound.emplace(p.name(), s);
        if (!inserted && it->second != s) return std::nullopt;
        continue;
      }
      if (s.is_app() && s.name() == p.name() && s.arity() == p.arity()) {
        for (std::size_t i = p.arity(); i-- > 0;) goals.push_back({p.args()[i], s.args()[i], {}});
        continue;
      }
      const std::string* eps = theory_.absorption_constant_of(p.name());
      if (!eps || !s.is_app() || s.name() != *eps || p.arity() != 2) return std::nullopt;
      for (std::size_t collapsing : {0u, 1u}) {
        std::vector<Goal> branch = goals;
        branch.push_back({p.args()[1 - collapsing], s, *eps});
        branch.push_back({p.args()[collapsing], s, {}});
        if (auto done = solve(std::move(branch), state)) return done;
      }
      return std::nullopt;
    }
    return state;
  }

 private:
  const Theory& theory_;
};

std::string fallback_constant(const Theory& theory) {
  auto pairs = theory.absorption_pairs();
  if (!pairs.empty()) return pairs.front().second;
  for (const auto& [name, arity] : theory.signature()) {
    if (arity == 0) return name;
  }
  return std::string(kWildcard);
}

}  // namespace

std::optional<Substitution> match_abs(const MatchProblem& p, const Theory& theory) {
  Matcher matcher(theory);
  auto state = matcher.solve({{p.pattern, p.subject, {}}}, {});
  if (!state) return std::nullopt;
  Substitution sigma;
  for (const auto& [x, t] : state->bound) sigma.bind(x, t);
  for (const std::string& v : vars_of(p.pattern)) {
    if (state->bound.count(v)) continue;
    auto it = state->defaults.find(v);
    sigma.bind(v, Term::app(it != state->defaults.end() ? it->second : fallback_constant(theory)));
  }
  return sigma;
}

std::optional<SolutionTriple> is_generalization(const Term& r, const Term& s, const Term& t,
                                                const Theory& theory) {
  auto sigma = match_abs({r, s}, theory);
  if (!sigma) return std::nullopt;
  auto rho = match_abs({r, t}, theory);
  if (!rho) return std::nullopt;
  return SolutionTriple{r, std::move(*sigma), std::move(*rho)};
}

bool more_general_eq(const Term& r1, const Term& r2, const Theory& theory) {
  return match_abs({r1, r2}, theory).has_value();
}

bool equivalent(const Term& r1, const Term& r2, const Theory& theory) {
  return more_general_eq(r1, r2, theory) && more_general_eq(r2, r1, theory);
}

bool check_pairwise_incomparable(const std::vector<Term>& terms, const Theory& theory) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (i != j && more_general_eq(terms[i], terms[j], theory)) return false;
    }
  }
  return true;
}

// ------------------------------------------------------- oracle

namespace {

// Plain generator, kept separate from the abstraction enumerator so the two
// can check each other.
class OracleTerms {
 public:
  OracleTerms(const Theory& theory, std::vector<std::string> leaves_vars)
      : theory_(theory), vars_(std::move(leaves_vars)) {
    for (const auto& [name, arity] : theory.signature()) {
      (arity == 0 ? constants_ : functions_).emplace_back(name, arity);
    }
  }

  const std::vector<Term>& sized(std::size_t n) {
    if (auto it = cache_.find(n); it != cache_.end()) return it->second;
    std::vector<Term> out;
    if (n == 1) {
      for (const std::string& v : vars_) out.push_back(Term::var(v));
      for (const auto& [name, arity] : constants_) out.push_back(Term::app(name));
    } else {
      for (const auto& [name, arity] : functions_) {
        std::vector<Term> args;
        fill(name, arity, n - 1, args, out);
      }
    }
    return cache_.emplace(n, std::move(out)).first->second;
  }

 private:
  void fill(const std::string& name, std::size_t arity, std::size_t left, std::vector<Term>& args,
            std::vector<Term>& out) {
    if (args.size() == arity) {
      if (left != 0) return;
      Term t = Term::app(name, args);
      if (is_normal(t, theory_)) out.push_back(std::move(t));
      return;
    }
    std::size_t still = arity - args.size() - 1;
    for (std::size_t k = 1; k + still <= left; ++k) {
      // The cache is a std::map, so inserting smaller sizes keeps this valid.
      for (const Term& a : sized(k)) {
        args.push_back(a);
        fill(name, arity, left - k, args, out);
        args.pop_back();
      }
    }
  }

  const Theory& theory_;
  std::vector<std::string> vars_;
  std::vector<std::pair<std::string, std::size_t>> constants_;
  std::vector<std::pair<std::string, std::size_t>> functions_;
  std::map<std::size_t, std::vector<Term>> cache_;
};

std::vector<std::string> pool_names(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(fresh_label(i));
  return out;
}

// Pool variables must appear as y1, y2, ... in order of first occurrence.
bool pool_vars_in_order(const Term& t, const VarSet& pool) {
  std::size_t next = 1;
  for (const std::string& v : vars_in_order(t)) {
    if (!pool.count(v)) continue;
    if (v != fresh_label(next)) return false;
    ++next;
  }
  return true;
}

std::vector<std::string> oracle_leaves(const Term& s, const Term& t, std::size_t var_count) {
  VarSet inputs;
  collect_vars(s, inputs);
  collect_vars(t, inputs);
  for (const std::string& v : inputs) {
    if (is_reserved_variable(v)) {
      throw InputError("variable '" + v + "' is in the reserved label namespace (yN, *_st)");
    }
  }
  std::vector<std::string> leaves = pool_names(var_count);
  leaves.insert(leaves.end(), inputs.begin(), inputs.end());
  return leaves;
}

}  // namespace

std::size_t oracle_candidate_count(const Term& s, const Term& t, const Theory& theory,
                                   const OracleOptions& opts) {
  OracleTerms gen(theory, oracle_leaves(s, t, opts.var_count));
  std::size_t total = 0;
  for (std::size_t n = 1; n <= opts.size_bound; ++n) total += gen.sized(n).size();
  return total;
}

std::vector<Term> brute_force_mcsg(const Term& s, const Term& t, const Theory& theory,
                                   const OracleOptions& opts) {
  const Term ns = normalize(s, theory);
  const Term nt = normalize(t, theory);
  const auto pool_list = pool_names(opts.var_count);
  const VarSet pool(pool_list.begin(), pool_list.end());
  OracleTerms gen(theory, oracle_leaves(ns, nt, opts.var_count));
  VarSet inputs;
  collect_vars(ns, inputs);
  collect_vars(nt, inputs);

  std::vector<Term> candidates;
  std::size_t seen = 0;
  for (std::size_t n = 1; n <= opts.size_bound; ++n) {
    const auto& layer = gen.sized(n);
    seen += layer.size();
    if (seen > opts.max_candidates) {
      throw InputError("oracle candidate limit exceeded (" + std::to_string(opts.max_candidates) +
                       "); lower the size bound or variable count");
    }
    for (const Term& r : layer) {
      if (pool_vars_in_order(r, pool) && is_generalization(r, ns, nt, theory)) {
        candidates.push_back(r);
      }
    }
  }

  // Maximal elements of the preorder, one representative per ≃ class.
  // Fewer variables first: those tend to be the specific ones.
  std::stable_sort(candidates.begin(), candidates.end(), [](const Term& a, const Term& b) {
    return vars_of(a).size() < vars_of(b).size();
  });
  std::vector<Term> maximal;
  for (const Term& c : candidates) {
    bool dominated = false;
    for (Term& m : maximal) {
      if (!more_general_eq(c, m, theory)) continue;
      dominated = true;
      if (more_general_eq(m, c, theory)) {
        Term rc = rename_canonically(c, inputs);
        if (rc < m) m = rc;
      }
      break;
    }
    if (dominated) continue;
    std::erase_if(maximal, [&](const Term& m) { return more_general_eq(m, c, theory); });
    maximal.push_back(rename_canonically(c, inputs));
  }
  std::sort(maximal.begin(), maximal.end());
  return maximal;
}

}  // namespace absau
