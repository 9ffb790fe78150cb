// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any
// fails. Usage: acceptance <cli> <golden dir>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <tuple>

#include "absau/config.hpp"
#include "absau/verify.hpp"
#include "golden.hpp"
#include "oracles.hpp"
#include "support.hpp"
#include "worked_examples.hpp"

using namespace absau;
using testsupport::modulo_renaming;
using testsupport::P;
using testsupport::parse_all;

namespace {

// Collects failures; only the first few are kept for the report.
struct Failures {
  std::size_t count = 0;
  std::vector<std::string> shown;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (++count <= 3) shown.push_back(what);
  }
};

std::string pair_text(const Term& s, const Term& t) { return to_string(s) + " vs " + to_string(t); }

Theory small_theory() {
  return Theory::parse("absorption f eps_f\nsymbol h/1\nsymbol a/0\nsymbol b/0\n");
}

void three_positions(Failures& f) {
  Theory th = testsupport::example_theory();
  Term s = P(th, "eps_f"), t = P(th, "f(f(b,c),a)");
  auto expected = modulo_renaming(parse_all(th, {"f(f(X,c),a)", "f(f(b,X),a)", "f(f(b,c),X)"}));
  f.expect(modulo_renaming(enumerate_generalizations(s, t, th, 7)) == expected, "enumerate at 7");
  OracleOptions o;
  o.size_bound = 7;
  o.var_count = 1;
  f.expect(modulo_renaming(brute_force_mcsg(s, t, th, o)) == expected, "oracle at size 7");
}

void nested(Failures& f) {
  testsupport::Fixture fx;
  const Theory& th = fx.th;
  Term s = P(th, "eps_f"), t = P(th, "f(a,f(h(a),b))");
  auto finals = derive_all(problem_configuration(s, t, th), th);
  f.expect(finals.size() == 3, "three final configurations");
  f.expect(testsupport::same_configurations(finals, testsupport::nested_configs(fx)),
           "stores, abstractions and bindings");

  std::size_t singletons = 0;
  for (const Configuration& c : finals) {
    auto psi = psi_substitutions(c.abstraction, c.store, th, 20);
    if (c.store.size() == 1 && c.store[0].right == P(th, "a")) {
      // {z -> f(h(a),b)} and {z -> f(h(y),b)} with y the store label.
      f.expect(c.abstraction.size() == 1, "one abstraction AUE with store a");
      if (c.abstraction.size() != 1) continue;
      const std::string& z = c.abstraction[0].label;
      std::set<Substitution> want{
          Substitution{{z, P(th, "f(h(a),b)")}},
          Substitution{{z, Term::app("f", {Term::app("h", {Term::var(c.store[0].label)}),
                                           P(th, "b")})}}};
      f.expect(std::set<Substitution>(psi.begin(), psi.end()) == want, "two-element Psi");
    } else if (psi.size() == 1) {
      ++singletons;
      for (const Aue& w : c.abstraction) {
        f.expect(psi[0].lookup(w.label) && *psi[0].lookup(w.label) == w.right,
                 "singleton Psi binds the wild label to its term");
      }
    }
  }
  f.expect(singletons == 2, "two singleton Psi sets");

  f.expect(modulo_renaming(enumerate_generalizations(s, t, th, 10)) ==
               modulo_renaming(parse_all(th, {"f(Y,f(h(a),b))", "f(Y,f(h(Y),b))", "f(a,f(Y,b))",
                                              "f(a,f(h(a),Z))"})),
           "four generalizations");
}

void infinite(Failures& f) {
  testsupport::Fixture fx;
  const Theory& th = fx.th;
  Term s = P(th, "g(eps_f,f(a,h(eps_f)))"), t = P(th, "g(f(h(eps_f),a),eps_f)");
  auto finals = derive_all(problem_configuration(s, t, th), th);
  f.expect(finals.size() == 4, "four final configurations");
  f.expect(testsupport::same_configurations(finals, testsupport::infinite_configs(fx)),
           "configurations as listed");

  auto set = GeneralizationSet::build(s, t, th);
  for (const char* g : {"g(f(U1,a),f(U2,h(eps_f)))", "g(f(U1,a),f(U2,h(U1)))",
                        "g(f(U1,a),f(U2,h(f(U1,a))))", "g(f(U1,a),f(a,V2))",
                        "g(f(h(eps_f),V1),f(U2,h(eps_f)))", "g(f(h(U2),V1),f(U2,h(V1)))",
                        "g(f(h(eps_f),V1),f(a,V2))", "g(f(h(V2),V1),f(a,V2))",
                        "g(f(h(f(V2,a)),V1),f(a,V2))"}) {
    f.expect(set.contains(P(th, g), 14), std::string("missing ") + g);
  }

  // Configuration 1: stores eps_f = h(eps_f) and a = eps_f; its wild label
  // h(eps_f) = * has an infinite set.
  bool found = false;
  for (const auto& e : set.entries()) {
    auto stores = std::set<std::pair<Term, Term>>();
    for (const Aue& st : e.config.store) stores.insert({st.left, st.right});
    if (stores != std::set<std::pair<Term, Term>>{{P(th, "eps_f"), P(th, "h(eps_f)")},
                                                   {P(th, "a"), P(th, "eps_f")}}) {
      continue;
    }
    found = true;
    for (const WildLabelQuery& q : e.wild) {
      if (q.target == P(th, "h(eps_f)")) {
        f.expect(!q.finite && !is_abstraction_finite(q.target, q.sigma, th),
                 "v2 set reported finite");
      }
    }
  }
  f.expect(found, "configuration 1 not found");

  std::size_t prev = set.up_to(3).size();
  for (std::size_t b = 4; b <= 6; ++b) {
    std::size_t now = set.up_to(b).size();
    f.expect(now > prev, "no growth at bound " + std::to_string(b));
    prev = now;
  }
}

void linear_variant(Failures& f) {
  Theory th = testsupport::example_theory();
  Term s = P(th, "g(eps_f,f(a,h(eps_f)))"), t = P(th, "g(f(h(eps_f),a),eps_f)");
  f.expect(modulo_renaming(linear_generalizations(s, t, th)) ==
               modulo_renaming(parse_all(th, {"g(f(U1,a),f(U2,h(eps_f)))", "g(f(U1,a),f(a,V2))",
                                              "g(f(h(eps_f),V1),f(U2,h(eps_f)))",
                                              "g(f(h(eps_f),V1),f(a,V2))"})),
           "the four linear terms");

  Theory two = testsupport::two_pair_theory();
  testsupport::TermGen gen(two, 2024);
  std::vector<std::pair<Term, Term>> problems{{s, t}};
  for (int i = 0; i < 200; ++i) {
    problems.push_back({normalize(gen.term(8), two), normalize(gen.term(8), two)});
  }
  DeriveOptions linear;
  linear.disable_merge = true;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const Theory& pth = i == 0 ? th : two;
    const auto& [ps, pt] = problems[i];
    auto lin = linear_generalizations(ps, pt, pth);
    for (const Term& g : lin) f.expect(is_linear(g), "nonlinear output for " + pair_text(ps, pt));
    std::size_t ns = count_absorption_symbols(ps, pth) + count_absorption_symbols(pt, pth);
    f.expect(lin.size() <= (std::size_t{1} << ns), "more than 2^n outputs for " + pair_text(ps, pt));
    for (const Derivation& d : derive_traces(problem_configuration(ps, pt, pth), pth, linear)) {
      f.expect(d.steps.size() <= ps.length() + pt.length(),
               "linear branch too long for " + pair_text(ps, pt));
    }
  }
}

void abstraction_sets(Failures& f) {
  Theory th = testsupport::example_theory();
  Term t = P(th, "g(eps_f,f(h(a),b))");
  Substitution sigma{{"x", P(th, "a")}, {"y", P(th, "f(h(a),b)")}, {"z", P(th, "b")}};
  auto five = modulo_renaming(parse_all(th, {"g(eps_f,f(h(a),b))", "g(eps_f,$y)",
                                             "g(eps_f,f(h($x),b))", "g(eps_f,f(h(a),$z))",
                                             "g(eps_f,f(h($x),$z))"}),
                              {"x", "y", "z"});
  for (std::size_t bound : {9u, 20u}) {
    f.expect(modulo_renaming(abstraction_set({t, sigma, bound, {}}, th), {"x", "y", "z"}) == five,
             "five-element set at bound " + std::to_string(bound));
  }

  Theory ap = Theory::parse("absorption f eps_f\nsymbol h/2\nsymbol a/0\nsymbol b/0\n");
  Substitution u2{{"u2", P(ap, "a")}};
  auto got1 = abstraction_set({P(ap, "f(b,h(a,b))"), u2, 7, {}}, ap);
  auto got2 = abstraction_set({P(ap, "h(b,a)"), u2, 7, {}}, ap);
  f.expect(std::set<Term>(got1.begin(), got1.end()) ==
               std::set<Term>{P(ap, "f(b,h(a,b))"), P(ap, "f(b,h($u2,b))")},
           "f(b,h(a,b)) set");
  f.expect(std::set<Term>(got2.begin(), got2.end()) ==
               std::set<Term>{P(ap, "h(b,a)"), P(ap, "h(b,$u2)")},
           "h(b,a) set");
}

// Pairs sharing a random skeleton, with differing fillers that are often an
// absorption constant against an f-application, so that absorption matters.
std::vector<std::pair<Term, Term>> skeleton_pairs(const Theory& th, std::size_t count,
                                                  std::size_t max_len) {
  testsupport::TermGen skel(th, 8128, {"P", "Q"});
  testsupport::TermGen fill(th, 77);
  std::vector<std::pair<Term, Term>> out;
  while (out.size() < count) {
    Term r = skel.term(5);
    Substitution left, right;
    for (const char* v : {"P", "Q"}) {
      Term eps = Term::app("eps_f");
      Term app = Term::app("f", {normalize(fill.term(2), th), normalize(fill.term(2), th)});
      switch (fill.pick(3)) {
        case 0:
          left.bind(v, eps);
          right.bind(v, app);
          break;
        case 1:
          left.bind(v, app);
          right.bind(v, eps);
          break;
        default:
          left.bind(v, normalize(fill.term(2), th));
          right.bind(v, normalize(fill.term(2), th));
      }
    }
    Term s = apply_subst(r, left, th), t = apply_subst(r, right, th);
    if (s.length() <= max_len && t.length() <= max_len) out.push_back({s, t});
  }
  return out;
}

void soundness(Failures& f) {
  Theory th = testsupport::two_pair_theory();
  testsupport::TermGen gen(th, 6006);
  const std::size_t bound = 8;
  auto problems = skeleton_pairs(th, 150, 8);
  for (int i = 0; i < 150; ++i) {
    problems.push_back({normalize(gen.term(8), th), normalize(gen.term(8), th)});
  }
  for (const auto& [s, t] : problems) {
    auto set = GeneralizationSet::build(s, t, th);
    for (const Term& g : set.up_to(bound)) {
      f.expect(is_generalization(g, s, t, th).has_value(),
               to_string(g) + " does not generalize " + pair_text(s, t));
    }
    for (const auto& e : set.entries()) {
      Term x_theta = computed_generalization(e.config, set.start());
      auto [sigma_s, rho_s] = store_substitutions(e.config);
      for (const Substitution& tau :
           psi_substitutions(e.config.abstraction, e.config.store, th, bound)) {
        Term g = substitute(x_theta, tau);
        f.expect(eq_abs(apply_subst(g, sigma_s, th), s, th) &&
                     eq_abs(apply_subst(g, rho_s, th), t, th),
                 "store witnesses fail for " + to_string(g) + " on " + pair_text(s, t));
      }
    }
  }
}

// Oracle members are covered by enumerated ones; enumerated members within
// the oracle's size and variable limits are equivalent to an oracle member.
void completeness(Failures& f) {
  Theory th = Theory::parse(
      "absorption f eps_f\nsymbol g/2\nsymbol h/1\nsymbol a/0\nsymbol b/0\n");
  OracleOptions o;
  o.size_bound = 8;
  o.var_count = 2;
  auto problems = skeleton_pairs(th, 100, 6);
  // Two small problems with an infinite set, one per side.
  std::size_t infinite = 0;
  problems.push_back({P(th, "g(eps_f,a)"), P(th, "g(f(h(eps_f),b),eps_f)")});
  problems.push_back({P(th, "g(f(h(eps_f),b),eps_f)"), P(th, "g(eps_f,a)")});
  for (const auto& [s, t] : problems) {
    if (!GeneralizationSet::build(s, t, th).finite()) ++infinite;
    auto oracle = brute_force_mcsg(s, t, th, o);
    auto enumerated = enumerate_generalizations(s, t, th, 8);
    for (const Term& x : oracle) {
      bool covered = std::any_of(enumerated.begin(), enumerated.end(),
                                 [&](const Term& e) { return more_general_eq(x, e, th); });
      f.expect(covered, "oracle member " + to_string(x) + " uncovered for " + pair_text(s, t));
    }
    for (const Term& e : enumerated) {
      if (e.length() > o.size_bound || vars_of(e).size() > o.var_count) continue;
      bool matched = std::any_of(oracle.begin(), oracle.end(),
                                 [&](const Term& x) { return equivalent(x, e, th); });
      f.expect(matched, "enumerated " + to_string(e) + " not in oracle for " + pair_text(s, t));
    }
    f.expect(check_pairwise_incomparable(enumerated, th), "comparable members for " + pair_text(s, t));
  }
  f.expect(infinite >= 2, "no infinite problem in the sample");
}

void invariants(Failures& f) {
  Theory th = testsupport::two_pair_theory();
  Theory ex = testsupport::example_theory();
  std::vector<std::tuple<Term, Term, const Theory*>> problems{
      {P(ex, "eps_f"), P(ex, "f(f(b,c),a)"), &ex},
      {P(ex, "eps_f"), P(ex, "f(a,f(h(a),b))"), &ex},
      {P(ex, "g(eps_f,f(a,h(eps_f)))"), P(ex, "g(f(h(eps_f),a),eps_f)"), &ex},
      {P(ex, "g(a,a)"), P(ex, "g(b,b)"), &ex}};
  testsupport::TermGen gen(th, 1917, {"X"});
  for (int i = 0; i < 150; ++i) {
    problems.push_back({normalize(gen.term(8), th), normalize(gen.term(8), th), &th});
  }

  for (const auto& [s, t, pth] : problems) {
    // Ground probes for the rigid-store check.
    std::vector<Term> probes = testsupport::all_normal_terms(*pth, {}, 3);
    Configuration init = problem_configuration(s, t, *pth);
    VarSet opaque = input_variables(init);
    for (const Derivation& d : derive_traces(init, *pth)) {
      for (const DerivationStep& step : d.steps) {
        auto violations = validate_configuration(step.result, *pth, opaque);
        f.expect(violations.empty(), "invalid step " + std::string(to_string(step.rule)) +
                                         " on " + pair_text(s, t));
      }
    }
    auto set = GeneralizationSet::build(s, t, *pth);
    for (const auto& e : set.entries()) {
      VarSet store_labels;
      for (const Aue& st : e.config.store) store_labels.insert(st.label);
      Term x_theta = computed_generalization(e.config, set.start());
      for (const Substitution& tau :
           psi_substitutions(e.config.abstraction, e.config.store, *pth, 4, opaque)) {
        for (const std::string& y : tau.domain()) {
          for (const std::string& v : vars_of(*tau.lookup(y))) {
            f.expect(store_labels.count(v) || opaque.count(v),
                     "tau range outside the store labels on " + pair_text(s, t));
          }
        }
        if (!opaque.empty()) continue;
        // Binding a store label to any ground term loses the generalization.
        Term g = substitute(x_theta, tau);
        for (const Aue& st : e.config.store) {
          for (const Term& r : probes) {
            f.expect(!is_generalization(apply_subst(g, {{st.label, r}}, *pth), s, t, *pth),
                     "store label " + st.label + " not rigid in " + to_string(g));
          }
        }
      }
    }
  }

  testsupport::TermGen terms(th, 1234, {"X", "Y"});
  std::mt19937 order(99);
  for (int i = 0; i < 1000; ++i) {
    Term t = terms.term(12);
    Term n = normalize(t, th);
    f.expect(is_normal(n, th) && normalize(n, th) == n, "normalize not idempotent on " + to_string(t));
    f.expect(testsupport::random_order_normalize(t, th, order) == n,
             "rewrite order changes the normal form of " + to_string(t));
  }

  Theory sm = small_theory();
  testsupport::TermGen pats(sm, 808, {"P", "Q"});
  testsupport::TermGen subs(sm, 909, {"X"});
  for (int i = 0; i < 500; ++i) {
    Term pattern = normalize(pats.term(5), sm);
    Term subject = normalize(subs.term(5), sm);
    if (i % 2 == 1) {
      Term inst = apply_subst(pattern, {{"P", subs.term(2)}, {"Q", subs.term(2)}}, sm);
      if (inst.length() <= 5) subject = inst;
    }
    auto m = match_abs({pattern, subject}, sm);
    f.expect(m.has_value() == testsupport::exhaustive_match(pattern, subject, sm),
             "match disagrees on " + pair_text(pattern, subject));
    if (m) {
      f.expect(eq_abs(apply_subst(pattern, *m, sm), subject, sm),
               "unsound match on " + pair_text(pattern, subject));
    }
  }
}

void determinism(Failures& f, const std::string& exe, const std::string& dir) {
  for (const golden::Case& c : golden::load_cases(dir)) {
    golden::Verdict v = golden::check_case(exe, dir, c);
    f.expect(v.ok, v.message);
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli> <golden dir>\n";
    return 2;
  }
  const std::string exe = argv[1], dir = argv[2];

  struct Criterion {
    const char* name;
    std::function<void(Failures&)> run;
  };
  std::vector<Criterion> criteria{
      {"eps_f vs f(f(b,c),a): enumeration and oracle", three_positions},
      {"eps_f vs f(a,f(h(a),b)): configurations, Psi sets, generalizations", nested},
      {"g(eps_f,f(a,h(eps_f))) vs g(f(h(eps_f),a),eps_f): configurations, samples, growth", infinite},
      {"linear generalizations and their bounds", linear_variant},
      {"finite abstraction sets", abstraction_sets},
      {"soundness on 300 random pairs", soundness},
      {"completeness and minimality against the oracle", completeness},
      {"invariant suite", invariants},
      {"CLI determinism", [&](Failures& f) { determinism(f, exe, dir); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Failures f;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(f);
    } catch (const std::exception& e) {
      f.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (f.count == 0 ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].name;
    line.precision(2);
    line << std::fixed << " (" << secs << "s)";
    std::cout << line.str() << "\n";
    for (const std::string& why : f.shown) std::cout << "     " << why << "\n";
    if (f.count > f.shown.size()) {
      std::cout << "     ... " << f.count - f.shown.size() << " more\n";
    }
    if (f.count) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
