#include "absau/engine.hpp"

#include <algorithm>
#include <condition_variable>
#include <map>
#include <mutex>
#include <thread>

namespace absau {

const char* to_string(RuleId rule) {
  switch (rule) {
    case RuleId::Dec: return "Dec";
    case RuleId::Sol: return "Sol";
    case RuleId::ExpLA1: return "ExpLA1";
    case RuleId::ExpLA2: return "ExpLA2";
    case RuleId::ExpRA1: return "ExpRA1";
    case RuleId::ExpRA2: return "ExpRA2";
    case RuleId::Mer: return "Mer";
  }
  return "?";
}

namespace {

std::size_t next_fresh_index(const Configuration& cfg) {
  std::size_t max = 0;
  auto see = [&](const std::string& name) {
    if (auto i = fresh_index(name)) max = std::max(max, *i);
  };
  for (const auto* part : {&cfg.unsolved, &cfg.store, &cfg.abstraction}) {
    for (const Aue& a : *part) see(a.label);
  }
  for (const auto& [x, t] : cfg.subst) {
    see(x);
    for (const std::string& v : vars_of(t)) see(v);
  }
  return max + 1;
}

// The largest label (creation order) among store AUEs equal to `aue`, other
// than `aue` itself. Null if `aue` is already the largest of its class.
const Aue* merge_partner(const std::vector<Aue>& store, const Aue& aue) {
  const Aue* best = nullptr;
  for (const Aue& other : store) {
    if (other.label == aue.label || other.left != aue.left || other.right != aue.right) continue;
    if (!label_less(aue.label, other.label)) continue;
    if (!best || label_less(best->label, other.label)) best = &other;
  }
  return best;
}

Substitution bind_one(const Substitution& theta, const std::string& x, const Term& t) {
  Substitution step;
  step.bind(x, t);
  return compose(theta, step);
}

[[noreturn]] void not_applicable(RuleId rule, const std::string& target) {
  throw InvariantError(std::string("rule ") + to_string(rule) + " does not apply to " + target);
}

}  // namespace

std::vector<RuleApplication> applicable_rules(const Configuration& cfg, const Theory& theory) {
  std::vector<RuleApplication> out;
  if (!cfg.unsolved.empty()) {
    const Aue& aue = cfg.unsolved.front();
    switch (classify_aue(aue, theory)) {
      case AueClass::Dec: out.push_back({RuleId::Dec, aue.label}); break;
      case AueClass::Solved: out.push_back({RuleId::Sol, aue.label}); break;
      case AueClass::ExpLeft:
        out.push_back({RuleId::ExpLA1, aue.label});
        out.push_back({RuleId::ExpLA2, aue.label});
        break;
      case AueClass::ExpRight:
        out.push_back({RuleId::ExpRA1, aue.label});
        out.push_back({RuleId::ExpRA2, aue.label});
        break;
      case AueClass::Wild: throw InvariantError("wild AUE " + aue.label + " in the unsolved set");
    }
    return out;
  }
  for (const Aue& aue : cfg.store) {
    if (merge_partner(cfg.store, aue)) out.push_back({RuleId::Mer, aue.label});
  }
  std::sort(out.begin(), out.end(), [](const RuleApplication& a, const RuleApplication& b) {
    return label_less(a.target, b.target);
  });
  return out;
}

Configuration apply_rule(const Configuration& cfg, RuleId rule, const std::string& target,
                         const Theory& theory) {
  Configuration out = cfg;
  if (rule == RuleId::Mer) {
    if (!cfg.unsolved.empty()) not_applicable(rule, target);
    auto it = std::find_if(out.store.begin(), out.store.end(),
                           [&](const Aue& a) { return a.label == target; });
    if (it == out.store.end()) not_applicable(rule, target);
    const Aue* partner = merge_partner(cfg.store, *it);
    if (!partner) not_applicable(rule, target);
    std::string keep = partner->label;
    out.store.erase(it);
    out.subst = bind_one(cfg.subst, target, Term::var(keep));
    return out;
  }

  auto it = std::find_if(out.unsolved.begin(), out.unsolved.end(),
                         [&](const Aue& a) { return a.label == target; });
  if (it == out.unsolved.end()) not_applicable(rule, target);
  const Aue aue = *it;
  const AueClass cls = classify_aue(aue, theory);
  out.unsolved.erase(it);
  std::size_t next = next_fresh_index(cfg);
  auto fresh = [&] { return fresh_label(next++); };

  switch (rule) {
    case RuleId::Dec: {
      if (cls != AueClass::Dec) not_applicable(rule, target);
      if (aue.left.is_var()) {
        out.subst = bind_one(cfg.subst, aue.label, aue.left);
        break;
      }
      std::vector<Term> label_vars;
      for (std::size_t i = 0; i < aue.left.arity(); ++i) {
        std::string y = fresh();
        out.unsolved.push_back({y, aue.left.args()[i], aue.right.args()[i]});
        label_vars.push_back(Term::var(y));
      }
      out.subst = bind_one(cfg.subst, aue.label, Term::app(aue.left.name(), std::move(label_vars)));
      break;
    }
    case RuleId::Sol:
      if (cls != AueClass::Solved) not_applicable(rule, target);
      out.store.push_back(aue);
      break;
    case RuleId::ExpLA1:
    case RuleId::ExpLA2:
    case RuleId::ExpRA1:
    case RuleId::ExpRA2: {
      const bool left = rule == RuleId::ExpLA1 || rule == RuleId::ExpLA2;
      if (cls != (left ? AueClass::ExpLeft : AueClass::ExpRight)) not_applicable(rule, target);
      const bool first = rule == RuleId::ExpLA1 || rule == RuleId::ExpRA1;
      const Term& eps = left ? aue.left : aue.right;
      const Term& app = left ? aue.right : aue.left;
      std::string y1 = fresh();
      std::string y2 = fresh();
      // The eps side keeps recursing into one argument; the other is abstracted.
      const std::size_t keep = first ? 0 : 1;
      const Term& kept = app.args()[keep];
      const Term& dropped = app.args()[1 - keep];
      const std::string& keep_label = first ? y1 : y2;
      const std::string& drop_label = first ? y2 : y1;
      if (left) {
        out.unsolved.push_back({keep_label, eps, kept});
        out.abstraction.push_back({drop_label, Term::wildcard(), dropped});
      } else {
        out.unsolved.push_back({keep_label, kept, eps});
        out.abstraction.push_back({drop_label, dropped, Term::wildcard()});
      }
      out.subst = bind_one(cfg.subst, aue.label,
                           Term::app(app.name(), {Term::var(y1), Term::var(y2)}));
      break;
    }
    case RuleId::Mer: break;
  }
  return out;
}

// ---------------------------------------------------------------- search

namespace {

struct Branch {
  Configuration cfg;
  std::size_t steps = 0;
  std::vector<DerivationStep> trace;
};

class Search {
 public:
  Search(const Configuration& initial, const Theory& theory, const DeriveOptions& opts, bool trace)
      : initial_(initial), theory_(theory), opts_(opts), trace_(trace),
        opaque_(input_variables(initial)) {}

  // Expands `b` by one step; finals go to `leaves`, successors to `children`
  // in the order they should be explored.
  void expand(Branch b, std::vector<Branch>& children, std::vector<Branch>& leaves) const {
    std::vector<RuleApplication> rules = applicable_rules(b.cfg, theory_);
    if (opts_.disable_merge && b.cfg.unsolved.empty()) rules.clear();
    if (rules.empty()) {
      leaves.push_back(std::move(b));
      return;
    }
    // Mer is applied deterministically: only the first target.
    if (rules.front().rule == RuleId::Mer) rules.resize(1);
    if (opts_.max_steps && b.steps + 1 > opts_.max_steps) {
      throw InvariantError("derivation exceeded the step limit of " +
                           std::to_string(opts_.max_steps));
    }
    for (auto it = rules.rbegin(); it != rules.rend(); ++it) {
      Branch next;
      next.cfg = apply_rule(b.cfg, it->rule, it->target, theory_);
      next.steps = b.steps + 1;
      if (opts_.validate_steps) {
        auto violations = validate_configuration(next.cfg, theory_, opaque_);
        if (!violations.empty()) {
          throw InvariantError(std::string("after ") + to_string(it->rule) + " on " + it->target +
                               ": " + violations.front());
        }
      }
      if (trace_) {
        next.trace = b.trace;
        next.trace.push_back({it->rule, it->target, next.cfg});
      }
      children.push_back(std::move(next));
    }
  }

  std::vector<Branch> run_serial() const {
    std::vector<Branch> stack{Branch{initial_, 0, {}}};
    std::vector<Branch> leaves;
    while (!stack.empty()) {
      Branch b = std::move(stack.back());
      stack.pop_back();
      expand(std::move(b), stack, leaves);
    }
    return leaves;
  }

  std::vector<Branch> run_parallel(unsigned threads) const {
    std::mutex mu;
    std::condition_variable cv;
    std::vector<Branch> stack{Branch{initial_, 0, {}}};
    std::vector<Branch> leaves;
    std::size_t busy = 0;
    std::exception_ptr error;

    auto worker = [&] {
      std::unique_lock lock(mu);
      for (;;) {
        cv.wait(lock, [&] { return !stack.empty() || busy == 0 || error; });
        if (error || (stack.empty() && busy == 0)) break;
        Branch b = std::move(stack.back());
        stack.pop_back();
        ++busy;
        lock.unlock();
        std::vector<Branch> children;
        std::vector<Branch> done;
        std::exception_ptr local;
        try {
          expand(std::move(b), children, done);
        } catch (...) {
          local = std::current_exception();
        }
        lock.lock();
        --busy;
        if (local && !error) error = local;
        for (Branch& c : children) stack.push_back(std::move(c));
        for (Branch& d : done) leaves.push_back(std::move(d));
        cv.notify_all();
      }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return leaves;
  }

 private:
  const Configuration& initial_;
  const Theory& theory_;
  const DeriveOptions& opts_;
  bool trace_;
  VarSet opaque_;
};

bool config_less(const Configuration& a, const Configuration& b) {
  auto starts_a = start_labels(a);
  auto starts_b = start_labels(b);
  if (starts_a != starts_b) return starts_a < starts_b;
  for (const std::string& s : starts_a) {
    const Term& ta = *a.subst.lookup(s);
    const Term& tb = *b.subst.lookup(s);
    if (ta != tb) return ta < tb;
  }
  auto aue_key = [](const std::vector<Aue>& v) {
    std::vector<std::tuple<std::size_t, std::string, Term, Term>> key;
    for (const Aue& x : v) key.emplace_back(fresh_index(x.label).value_or(0), x.label, x.left, x.right);
    return key;
  };
  if (auto ka = aue_key(a.store), kb = aue_key(b.store); ka != kb) return ka < kb;
  if (auto ka = aue_key(a.abstraction), kb = aue_key(b.abstraction); ka != kb) return ka < kb;
  if (auto ka = aue_key(a.unsolved), kb = aue_key(b.unsolved); ka != kb) return ka < kb;
  return a.subst < b.subst;
}

Configuration rename_labels(const Configuration& cfg, std::map<std::string, std::string> renaming,
                            std::size_t next) {
  const std::vector<std::string> starts = start_labels(cfg);
  VarSet aue_labels;
  for (const auto* part : {&cfg.unsolved, &cfg.store, &cfg.abstraction}) {
    for (const Aue& a : *part) aue_labels.insert(a.label);
  }
  for (const std::string& s : starts) {
    for (const std::string& v : vars_in_order(*cfg.subst.lookup(s))) {
      if (aue_labels.count(v) && !renaming.count(v)) renaming[v] = fresh_label(next++);
    }
  }
  for (const auto* part : {&cfg.store, &cfg.abstraction, &cfg.unsolved}) {
    for (const Aue& a : *part) {
      if (!renaming.count(a.label)) renaming[a.label] = fresh_label(next++);
    }
  }
  // Remaining Dom(theta) labels, ordered by their renamed images.
  std::vector<std::pair<Term, std::string>> inner;
  for (const auto& [x, t] : cfg.subst) {
    if (!is_start_label(x) && !renaming.count(x)) inner.emplace_back(rename_vars(t, renaming), x);
  }
  std::sort(inner.begin(), inner.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return label_less(a.second, b.second);
  });
  for (const auto& [image, x] : inner) renaming[x] = fresh_label(next++);

  Configuration out;
  auto rename_part = [&](const std::vector<Aue>& in, std::vector<Aue>& dst) {
    for (const Aue& a : in) dst.push_back({renaming.at(a.label), a.left, a.right});
  };
  rename_part(cfg.unsolved, out.unsolved);
  rename_part(cfg.store, out.store);
  rename_part(cfg.abstraction, out.abstraction);
  auto by_label = [](const Aue& a, const Aue& b) { return label_less(a.label, b.label); };
  std::sort(out.store.begin(), out.store.end(), by_label);
  std::sort(out.abstraction.begin(), out.abstraction.end(), by_label);
  for (const auto& [x, t] : cfg.subst) {
    auto it = renaming.find(x);
    out.subst.bind(it == renaming.end() ? x : it->second, rename_vars(t, renaming));
  }
  return out;
}

}  // namespace

std::vector<Derivation> derive_traces(const Configuration& cfg, const Theory& theory,
                                      const DeriveOptions& opts) {
  Search search(cfg, theory, opts, /*trace=*/true);
  std::vector<Derivation> out;
  for (Branch& b : search.run_serial()) out.push_back({cfg, std::move(b.trace)});
  return out;
}

std::vector<Configuration> derive_all(const Configuration& cfg, const Theory& theory,
                                      const DeriveOptions& opts) {
  Search search(cfg, theory, opts, /*trace=*/false);
  std::vector<Branch> leaves =
      opts.threads > 1 ? search.run_parallel(opts.threads) : search.run_serial();
  std::vector<Configuration> finals;
  finals.reserve(leaves.size());
  for (const Branch& b : leaves) finals.push_back(canonicalize(b.cfg));
  std::sort(finals.begin(), finals.end(), config_less);
  finals.erase(std::unique(finals.begin(), finals.end()), finals.end());
  return finals;
}

Configuration canonicalize(const Configuration& cfg) { return rename_labels(cfg, {}, 1); }

std::vector<Configuration> merge_final(const std::vector<Configuration>& configs) {
  std::map<std::pair<Term, Term>, std::string> shared;
  std::vector<std::pair<Term, Term>> order;
  for (const Configuration& c : configs) {
    for (const Aue& a : c.store) {
      auto key = std::make_pair(a.left, a.right);
      if (!shared.count(key)) {
        shared.emplace(key, "");
        order.push_back(key);
      }
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) shared[order[i]] = fresh_label(i + 1);

  std::vector<Configuration> out;
  out.reserve(configs.size());
  for (const Configuration& c : configs) {
    std::map<std::string, std::string> renaming;
    for (const Aue& a : c.store) renaming[a.label] = shared.at({a.left, a.right});
    out.push_back(rename_labels(c, std::move(renaming), order.size() + 1));
  }
  return out;
}

std::pair<Substitution, Substitution> solution_substitutions(const Configuration& cfg) {
  Substitution sigma, rho;
  for (const auto* part : {&cfg.store, &cfg.abstraction}) {
    for (const Aue& a : *part) {
      sigma.bind(a.label, a.left);
      rho.bind(a.label, a.right);
    }
  }
  return {sigma, rho};
}

std::pair<Substitution, Substitution> store_substitutions(const Configuration& cfg) {
  Substitution sigma, rho;
  for (const Aue& a : cfg.store) {
    sigma.bind(a.label, a.left);
    rho.bind(a.label, a.right);
  }
  return {sigma, rho};
}

Term computed_generalization(const Configuration& cfg, const std::string& start) {
  if (const Term* t = cfg.subst.lookup(start)) return *t;
  throw InputError("unknown start label '" + start + "'");
}

std::vector<std::string> start_labels(const Configuration& cfg) {
  std::vector<std::string> out;
  for (const auto& [x, t] : cfg.subst) {
    if (is_start_label(x)) out.push_back(x);
  }
  return out;
}

std::string problem_start_label() { return start_label("y0"); }

Configuration problem_configuration(const Term& s, const Term& t, const Theory& theory) {
  for (const Term* side : {&s, &t}) {
    for (const std::string& v : vars_of(*side)) {
      if (is_reserved_variable(v)) {
        throw InputError("variable '" + v + "' is in the reserved label namespace (yN, *_st)");
      }
    }
  }
  Term ns = normalize(s, theory);
  Term nt = normalize(t, theory);
  if (ns.is_wildcard() || nt.is_wildcard()) throw InputError("the wild card '*' is reserved");
  return initial_configuration({Aue{"y0", ns, nt}});
}

}  // namespace absau
