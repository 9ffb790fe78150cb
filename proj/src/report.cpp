#include "absau/report.hpp"

#include <sstream>

#include "absau/abstraction.hpp"
#include "absau/serialize.hpp"
#include "absau/verify.hpp"

namespace absau {

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json term_list(const std::vector<Term>& terms) {
  Json j = Json::array();
  for (const Term& t : terms) j.push_back(to_string(t));
  return j;
}

std::string aue_text(const Aue& a) {
  return to_string(a.left) + " =[" + a.label + "]= " + to_string(a.right);
}

DeriveOptions derive_options(const CommandOptions& opts) {
  DeriveOptions d;
  d.max_steps = opts.max_steps;
  d.validate_steps = true;
  d.threads = std::max(1u, opts.threads);
  return d;
}

void pretty_aues(std::ostringstream& out, const char* title, const std::vector<Aue>& aues,
                 const std::vector<WildLabelQuery>* wild = nullptr) {
  out << "  " << title;
  if (aues.empty()) {
    out << " -\n";
    return;
  }
  for (std::size_t i = 0; i < aues.size(); ++i) {
    out << (i == 0 ? " " : std::string(std::char_traits<char>::length(title) + 3, ' '))
        << aue_text(aues[i]);
    if (wild) out << ((*wild)[i].finite ? "  (finite)" : "  (infinite)");
    out << "\n";
  }
}

}  // namespace

std::string report_normalize(const Theory& theory, const Term& t, const CommandOptions& opts) {
  Term n = normalize(t, theory);
  if (opts.json) return dump(Json{{"term", to_string(t)}, {"normal_form", to_string(n)}});
  return to_string(n) + "\n";
}

std::string report_generalize(const Theory& theory, const Term& s, const Term& t,
                              const CommandOptions& opts) {
  const DeriveOptions dopts = derive_options(opts);
  const Configuration initial = problem_configuration(s, t, theory);
  const std::vector<Configuration> finals = merge_final(derive_all(initial, theory, dopts));
  const std::string start = problem_start_label();

  std::vector<Derivation> traces;
  if (opts.trace) traces = derive_traces(initial, theory, dopts);

  if (opts.json) {
    Json configs = Json::array();
    for (const Configuration& cfg : finals) {
      auto [sigma, rho] = solution_substitutions(cfg);
      Json wild = Json::array();
      for (const WildLabelQuery& q : wild_label_queries(cfg.abstraction, cfg.store, theory)) {
        wild.push_back(Json{{"label", q.label}, {"finite", q.finite}});
      }
      Json c = to_json(cfg);
      c["generalization"] = to_string(computed_generalization(cfg, start));
      c["left_subst"] = to_json(sigma);
      c["right_subst"] = to_json(rho);
      c["wild"] = std::move(wild);
      configs.push_back(std::move(c));
    }
    Json out{{"left", to_string(normalize(s, theory))},
             {"right", to_string(normalize(t, theory))},
             {"start", start},
             {"configurations", std::move(configs)}};
    if (opts.trace) {
      Json ds = Json::array();
      for (const Derivation& d : traces) ds.push_back(to_json(d));
      out["initial"] = to_json(initial);
      out["derivations"] = std::move(ds);
    }
    return dump(out);
  }

  std::ostringstream out;
  out << "problem: " << aue_text(initial.unsolved.front()) << "\n";
  out << finals.size() << " final configuration" << (finals.size() == 1 ? "" : "s") << "\n";
  for (std::size_t i = 0; i < finals.size(); ++i) {
    const Configuration& cfg = finals[i];
    auto [sigma, rho] = solution_substitutions(cfg);
    auto wild = wild_label_queries(cfg.abstraction, cfg.store, theory);
    out << "\nconfiguration " << i + 1 << "\n";
    out << "  generalization " << to_string(computed_generalization(cfg, start)) << "\n";
    pretty_aues(out, "store", cfg.store);
    pretty_aues(out, "abstraction", cfg.abstraction, &wild);
    out << "  theta " << to_string(cfg.subst) << "\n";
    out << "  left  " << to_string(sigma) << "\n";
    out << "  right " << to_string(rho) << "\n";
  }
  if (opts.trace) {
    for (std::size_t i = 0; i < traces.size(); ++i) {
      out << "\nderivation " << i + 1 << "\n" << to_json(traces[i]).dump() << "\n";
    }
  }
  return out.str();
}

std::string report_enumerate(const Theory& theory, const Term& s, const Term& t,
                             const CommandOptions& opts) {
  if (opts.bound == 0) throw InputError("enumerate needs a positive --bound");
  const DeriveOptions dopts = derive_options(opts);
  GeneralizationSet set = GeneralizationSet::build(s, t, theory, dopts);
  std::vector<Term> gens = set.up_to(opts.bound, dopts.threads);
  const bool truncated = set.truncated_at(opts.bound);

  if (opts.json) {
    Json labels = Json::array();
    for (std::size_t i = 0; i < set.entries().size(); ++i) {
      for (const WildLabelQuery& q : set.entries()[i].wild) {
        labels.push_back(Json{{"configuration", i + 1}, {"label", q.label}, {"finite", q.finite}});
      }
    }
    return dump(Json{{"generalizations", term_list(gens)},
                     {"bound", opts.bound},
                     {"truncated", truncated},
                     {"finite", set.finite()},
                     {"labels", std::move(labels)}});
  }
  std::ostringstream out;
  for (const Term& g : gens) out << to_string(g) << "\n";
  out << "-- " << gens.size() << " generalization" << (gens.size() == 1 ? "" : "s")
      << " at bound " << opts.bound;
  if (truncated) out << " (truncated: some abstraction sets have longer members)";
  out << "\n";
  for (std::size_t i = 0; i < set.entries().size(); ++i) {
    for (const WildLabelQuery& q : set.entries()[i].wild) {
      out << "-- configuration " << i + 1 << " label " << q.label << ": "
          << (q.finite ? "finite" : "infinite") << "\n";
    }
  }
  return out.str();
}

std::string report_linear(const Theory& theory, const Term& s, const Term& t,
                          const CommandOptions& opts) {
  std::vector<Term> gens = linear_generalizations(s, t, theory, derive_options(opts));
  if (opts.json) return dump(Json{{"generalizations", term_list(gens)}});
  std::ostringstream out;
  for (const Term& g : gens) out << to_string(g) << "\n";
  return out.str();
}

CheckReport report_check(const Theory& theory, const Term& r, const Term& s, const Term& t,
                         const CommandOptions& opts) {
  const Term nr = normalize(r, theory);
  const Term ns = normalize(s, theory);
  const Term nt = normalize(t, theory);
  auto left = match_abs({nr, ns}, theory);
  auto right = match_abs({nr, nt}, theory);
  CheckReport rep;
  rep.generalizes = left && right;
  if (opts.json) {
    Json j{{"generalization", to_string(nr)},
           {"left", to_string(ns)},
           {"right", to_string(nt)},
           {"generalizes", rep.generalizes}};
    j["left_subst"] = left ? to_json(*left) : Json(nullptr);
    j["right_subst"] = right ? to_json(*right) : Json(nullptr);
    rep.text = dump(j);
    return rep;
  }
  std::ostringstream out;
  out << to_string(nr) << (rep.generalizes ? " generalizes " : " does not generalize ")
      << to_string(ns) << " and " << to_string(nt) << "\n";
  out << "  left  " << (left ? to_string(*left) : "no match") << "\n";
  out << "  right " << (right ? to_string(*right) : "no match") << "\n";
  rep.text = out.str();
  return rep;
}

std::string report_oracle(const Theory& theory, const Term& s, const Term& t,
                          const CommandOptions& opts) {
  if (opts.size_bound == 0) throw InputError("oracle needs a positive --size");
  if (opts.size_bound > kOracleSizeLimit && !opts.force) {
    throw InputError("oracle size " + std::to_string(opts.size_bound) + " exceeds " +
                     std::to_string(kOracleSizeLimit) + "; pass --force to run it anyway");
  }
  OracleOptions o;
  o.size_bound = opts.size_bound;
  o.var_count = opts.var_count;
  std::vector<Term> gens = brute_force_mcsg(s, t, theory, o);
  if (opts.json) {
    return dump(Json{{"generalizations", term_list(gens)},
                     {"size_bound", opts.size_bound},
                     {"var_count", opts.var_count}});
  }
  std::ostringstream out;
  for (const Term& g : gens) out << to_string(g) << "\n";
  return out.str();
}

}  // namespace absau
