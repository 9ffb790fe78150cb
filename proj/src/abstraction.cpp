#include "absau/abstraction.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace absau {

// ------------------------------------------------------- normal terms

NormalTermEnumerator::NormalTermEnumerator(const Theory& theory, VarSet vars)
    : symbols_(theory.signature()), vars_(std::move(vars)), theory_(&theory) {
  by_length_.emplace_back();  // length 0 is empty
}

const std::vector<Term>& NormalTermEnumerator::of_length(std::size_t n) {
  while (by_length_.size() <= n) extend(by_length_.size());
  return by_length_[n];
}

namespace {

// Calls emit(args) for every argument vector whose lengths sum to `total`,
// each argument drawn from `pool(len)`.
template <typename Pool, typename Emit>
void for_each_split(std::size_t arity, std::size_t total, Pool&& pool, std::vector<Term>& args,
                    Emit&& emit) {
  if (args.size() == arity) {
    if (total == 0) emit(args);
    return;
  }
  const std::size_t rest = arity - args.size() - 1;
  if (total < rest + 1) return;
  for (std::size_t len = 1; len + rest <= total; ++len) {
    for (const Term& t : pool(len)) {
      args.push_back(t);
      for_each_split(arity, total - len, pool, args, emit);
      args.pop_back();
    }
  }
}

bool collapses(const Theory& theory, const std::string& f, const std::vector<Term>& args) {
  const std::string* eps = theory.absorption_constant_of(f);
  if (!eps) return false;
  return std::any_of(args.begin(), args.end(),
                     [&](const Term& a) { return a.is_app() && a.arity() == 0 && a.name() == *eps; });
}

}  // namespace

void NormalTermEnumerator::extend(std::size_t n) {
  std::vector<Term> out;
  if (n == 1) {
    for (const std::string& v : vars_) out.push_back(Term::var(v));
    for (const auto& [name, arity] : symbols_) {
      if (arity == 0) out.push_back(Term::app(name));
    }
  } else {
    for (const auto& [name, arity] : symbols_) {
      if (arity == 0 || arity > n - 1) continue;
      std::vector<Term> args;
      // by_length_ only holds lengths < n here, so this cannot recurse.
      auto pool = [this](std::size_t len) -> const std::vector<Term>& { return by_length_[len]; };
      for_each_split(arity, n - 1, pool, args, [&](const std::vector<Term>& a) {
        if (!collapses(*theory_, name, a)) out.push_back(Term::app(name, a));
      });
    }
  }
  std::sort(out.begin(), out.end());
  by_length_.push_back(std::move(out));
}

// ------------------------------------------------------- abstraction sets

namespace {

class Abstractor {
 public:
  Abstractor(const Theory& theory, const Substitution& sigma, const VarSet& opaque)
      : theory_(theory), sigma_(sigma), any_(theory, any_vars(sigma, opaque)) {}

  const std::vector<Term>& members(const Term& t, std::size_t bound) {
    auto key = std::make_pair(t, bound);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::set<Term> out;
    if (bound >= 1) compute(t, bound, out);
    return memo_.emplace(key, std::vector<Term>(out.begin(), out.end())).first->second;
  }

 private:
  static VarSet any_vars(const Substitution& sigma, const VarSet& opaque) {
    VarSet vars = sigma.domain();
    vars.insert(opaque.begin(), opaque.end());
    return vars;
  }

  void compute(const Term& t, std::size_t bound, std::set<Term>& out) {
    for (const auto& [x, image] : sigma_) {
      if (image == t) out.insert(Term::var(x));
    }
    if (t.is_var() || t.arity() == 0) {
      out.insert(t);
    } else if (bound > t.arity()) {
      const std::size_t n = t.arity();
      std::vector<std::vector<Term>> child(n);
      for (std::size_t i = 0; i < n; ++i) {
        child[i] = members(t.args()[i], bound - n);
        if (child[i].empty()) break;
      }
      std::vector<Term> args;
      product(t.name(), child, bound - 1, args, out);
    }
    const SymbolInfo* info = t.is_app() ? theory_.find(t.name()) : nullptr;
    if (info && info->kind == SymbolKind::AbsorptionConstant && bound >= 3) {
      const std::string& f = info->partner;
      for (const Term& r1 : members(t, bound - 2)) {
        if (r1 == t) continue;
        for (std::size_t len = 1; len + r1.length() + 1 <= bound; ++len) {
          for (const Term& other : any_.of_length(len)) {
            if (other == t) continue;
            out.insert(Term::app(f, {r1, other}));
            out.insert(Term::app(f, {other, r1}));
          }
        }
      }
    }
  }

  void product(const std::string& head, const std::vector<std::vector<Term>>& child,
               std::size_t budget, std::vector<Term>& args, std::set<Term>& out) {
    const std::size_t i = args.size();
    if (i == child.size()) {
      out.insert(Term::app(head, args));
      return;
    }
    const std::size_t rest = child.size() - i - 1;
    for (const Term& c : child[i]) {
      // Members are sorted by length, so the first miss ends the scan.
      if (c.length() + rest > budget) break;
      args.push_back(c);
      product(head, child, budget - c.length(), args, out);
      args.pop_back();
    }
  }

  const Theory& theory_;
  const Substitution& sigma_;
  NormalTermEnumerator any_;
  std::map<std::pair<Term, std::size_t>, std::vector<Term>> memo_;
};

void collect_subterms(const Term& t, std::vector<Term>& out) {
  out.push_back(t);
  if (t.is_app()) {
    for (const Term& a : t.args()) collect_subterms(a, out);
  }
}

}  // namespace

std::vector<Term> abstraction_set(const AbstractionQuery& q, const Theory& theory) {
  Abstractor abstractor(theory, q.sigma, q.opaque);
  return abstractor.members(q.target, q.size_bound);
}

bool in_abstraction_set(const Term& r, const Term& target, const Substitution& sigma,
                        const Theory& theory, const VarSet& opaque) {
  if (!is_normal(r, theory)) return false;
  for (const std::string& v : vars_of(r)) {
    if (!sigma.in_domain(v) && !opaque.count(v)) return false;
  }
  return apply_subst(r, sigma, theory) == target;
}

bool is_abstraction_finite(const Term& target, const Substitution& sigma, const Theory& theory) {
  std::vector<Term> subterms;
  collect_subterms(target, subterms);
  for (const Term& u : subterms) {
    if (!u.is_app() || !theory.is_absorption_constant(u.name())) continue;
    for (const auto& [x, image] : sigma) {
      if (image == u) return false;
    }
  }
  return true;
}

std::vector<WildLabelQuery> wild_label_queries(const std::vector<Aue>& abstraction,
                                               const std::vector<Aue>& store,
                                               const Theory& theory) {
  Substitution sigma_s, rho_s;
  for (const Aue& a : store) {
    sigma_s.bind(a.label, a.left);
    rho_s.bind(a.label, a.right);
  }
  std::vector<WildLabelQuery> out;
  for (const Aue& a : abstraction) {
    const Substitution& sigma = a.left.is_wildcard() ? rho_s : sigma_s;
    const Term& target = a.non_wild_side();
    out.push_back({a.label, target, sigma, is_abstraction_finite(target, sigma, theory)});
  }
  return out;
}

namespace {

std::vector<std::vector<Term>> label_sets(const std::vector<WildLabelQuery>& queries,
                                          const Theory& theory, std::size_t bound,
                                          const VarSet& opaque) {
  std::vector<std::vector<Term>> sets;
  for (const WildLabelQuery& q : queries) {
    sets.push_back(abstraction_set({q.target, q.sigma, bound, opaque}, theory));
  }
  return sets;
}

template <typename Emit>
void for_each_tau(const std::vector<WildLabelQuery>& queries,
                  const std::vector<std::vector<Term>>& sets, Substitution& tau, std::size_t i,
                  Emit&& emit) {
  if (i == queries.size()) {
    emit(tau);
    return;
  }
  for (const Term& r : sets[i]) {
    tau.bind(queries[i].label, r);
    for_each_tau(queries, sets, tau, i + 1, emit);
  }
  tau.erase(queries[i].label);
}

}  // namespace

std::vector<Substitution> psi_substitutions(const std::vector<Aue>& abstraction,
                                            const std::vector<Aue>& store, const Theory& theory,
                                            std::size_t bound, const VarSet& opaque) {
  auto queries = wild_label_queries(abstraction, store, theory);
  auto sets = label_sets(queries, theory, bound, opaque);
  std::vector<Substitution> out;
  Substitution tau;
  for_each_tau(queries, sets, tau, 0, [&](const Substitution& s) { out.push_back(s); });
  return out;
}

// ------------------------------------------------------- C_AUnif

GeneralizationSet GeneralizationSet::build(const Term& s, const Term& t, const Theory& theory,
                                           const DeriveOptions& opts) {
  GeneralizationSet set;
  set.theory_ = theory;
  set.start_ = problem_start_label();
  collect_vars(s, set.opaque_);
  collect_vars(t, set.opaque_);
  Configuration initial = problem_configuration(s, t, theory);
  for (Configuration& cfg : merge_final(derive_all(initial, theory, opts))) {
    Entry e;
    e.wild = wild_label_queries(cfg.abstraction, cfg.store, theory);
    e.config = std::move(cfg);
    set.entries_.push_back(std::move(e));
  }
  return set;
}

bool GeneralizationSet::finite() const {
  for (const Entry& e : entries_) {
    for (const WildLabelQuery& q : e.wild) {
      if (!q.finite) return false;
    }
  }
  return true;
}

std::vector<Term> GeneralizationSet::up_to(std::size_t bound, unsigned threads) const {
  auto one = [&](const Entry& e) {
    std::vector<Term> out;
    Term base = computed_generalization(e.config, start_);
    auto sets = label_sets(e.wild, theory_, bound, opaque_);
    Substitution tau;
    for_each_tau(e.wild, sets, tau, 0, [&](const Substitution& tv) {
      out.push_back(apply_subst(base, tv, theory_));
    });
    return out;
  };
  std::vector<Term> all;
  if (threads > 1 && entries_.size() > 1) {
    std::vector<std::future<std::vector<Term>>> jobs;
    for (const Entry& e : entries_) jobs.push_back(std::async(std::launch::async, one, std::cref(e)));
    for (auto& j : jobs) {
      auto part = j.get();
      all.insert(all.end(), part.begin(), part.end());
    }
  } else {
    for (const Entry& e : entries_) {
      auto part = one(e);
      all.insert(all.end(), part.begin(), part.end());
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

bool GeneralizationSet::truncated_at(std::size_t bound) const {
  for (const Entry& e : entries_) {
    for (const WildLabelQuery& q : e.wild) {
      if (!q.finite) return true;
      // A finite set has no member longer than its target.
      if (bound >= q.target.length()) continue;
      auto full = abstraction_set({q.target, q.sigma, q.target.length(), opaque_}, theory_);
      if (!full.empty() && full.back().length() > bound) return true;
    }
  }
  return false;
}

namespace {

struct ContainsMatcher {
  const VarSet& store_labels;
  const VarSet& wild_labels;
  std::map<std::string, Term> binding;

  bool match(const Term& p, const Term& g) {
    if (p.is_var()) {
      if (store_labels.count(p.name())) {
        if (!g.is_var()) return false;
      } else if (!wild_labels.count(p.name())) {
        return g == p;  // input variable
      }
      auto [it, inserted] = binding.emplace(p.name(), g);
      return inserted || it->second == g;
    }
    if (!g.is_app() || g.name() != p.name() || g.arity() != p.arity()) return false;
    for (std::size_t i = 0; i < p.arity(); ++i) {
      if (!match(p.args()[i], g.args()[i])) return false;
    }
    return true;
  }
};

}  // namespace

bool GeneralizationSet::contains(const Term& g, std::size_t bound) const {
  for (const Entry& e : entries_) {
    VarSet store_labels, wild_labels;
    for (const Aue& a : e.config.store) store_labels.insert(a.label);
    for (const Aue& a : e.config.abstraction) wild_labels.insert(a.label);
    ContainsMatcher m{store_labels, wild_labels, {}};
    if (!m.match(computed_generalization(e.config, start_), g)) continue;

    // Store labels must be a renaming onto the variables of g.
    std::map<std::string, std::string> inverse;
    bool ok = true;
    for (const std::string& y : store_labels) {
      auto it = m.binding.find(y);
      if (it == m.binding.end()) continue;
      if (!inverse.emplace(it->second.name(), y).second) ok = false;
    }
    for (const std::string& v : vars_of(g)) {
      if (!inverse.count(v) && !opaque_.count(v)) ok = false;
    }
    if (!ok) continue;
    for (const WildLabelQuery& q : e.wild) {
      auto it = m.binding.find(q.label);
      if (it == m.binding.end()) continue;
      Term r = rename_vars(it->second, inverse);
      if (r.length() > bound || !in_abstraction_set(r, q.target, q.sigma, theory_, opaque_)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

GeneralizationStream::Batch GeneralizationStream::next() {
  Batch batch{bound_, {}};
  std::vector<Term> now = set_->up_to(bound_);
  std::set_difference(now.begin(), now.end(), seen_.begin(), seen_.end(),
                      std::back_inserter(batch.fresh));
  seen_ = std::move(now);
  ++bound_;
  return batch;
}

std::vector<Term> enumerate_generalizations(const Term& s, const Term& t, const Theory& theory,
                                            std::size_t bound, const DeriveOptions& opts) {
  return GeneralizationSet::build(s, t, theory, opts).up_to(bound, opts.threads);
}

// ------------------------------------------------------- linear variant

Term linear_generalization_of(const Configuration& final_cfg, const std::string& start) {
  Substitution fill;
  for (const Aue& a : final_cfg.abstraction) fill.bind(a.label, a.non_wild_side());
  return substitute(computed_generalization(final_cfg, start), fill);
}

std::vector<Term> linear_generalizations(const Term& s, const Term& t, const Theory& theory,
                                         const DeriveOptions& opts) {
  DeriveOptions linear = opts;
  linear.disable_merge = true;
  VarSet keep;
  collect_vars(s, keep);
  collect_vars(t, keep);
  std::vector<Term> out;
  for (const Configuration& cfg : derive_all(problem_configuration(s, t, theory), theory, linear)) {
    out.push_back(rename_canonically(
        normalize(linear_generalization_of(cfg, problem_start_label()), theory), keep));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Term rename_canonically(const Term& t, const VarSet& keep) {
  std::map<std::string, std::string> renaming;
  std::size_t next = 1;
  for (const std::string& v : vars_in_order(t)) {
    if (!keep.count(v)) renaming.emplace(v, fresh_label(next++));
  }
  return rename_vars(t, renaming);
}

}  // namespace absau
