#include "absau/config.hpp"

#include <algorithm>

namespace absau {

const char* to_string(AueClass c) {
  switch (c) {
    case AueClass::Solved: return "solved";
    case AueClass::Wild: return "wild";
    case AueClass::Dec: return "dec";
    case AueClass::ExpLeft: return "exp_left";
    case AueClass::ExpRight: return "exp_right";
  }
  return "?";
}

AueClass classify_aue(const Aue& aue, const Theory& theory) {
  if (aue.is_wild()) return AueClass::Wild;
  const Term& l = aue.left;
  const Term& r = aue.right;
  if (!is_normal(l, theory) || !is_normal(r, theory)) {
    throw InvariantError("AUE " + aue.label + " is not in Abs-normal form");
  }
  if (l.is_var() || r.is_var()) {
    // Input variables are opaque constants: only x =?= x decomposes.
    return (l.is_var() && r.is_var() && l.name() == r.name()) ? AueClass::Dec : AueClass::Solved;
  }
  if (l.name() == r.name()) {
    if (l.arity() != r.arity()) {
      throw InvariantError("symbol '" + l.name() + "' used with two arities in AUE " + aue.label);
    }
    return AueClass::Dec;
  }
  if (theory.related(l.name(), r.name())) {
    if (theory.is_absorption_constant(l.name())) return AueClass::ExpLeft;
    return AueClass::ExpRight;
  }
  return AueClass::Solved;
}

std::vector<std::string> labels(const std::vector<Aue>& aues) {
  std::vector<std::string> out;
  out.reserve(aues.size());
  for (const Aue& a : aues) out.push_back(a.label);
  return out;
}

Configuration initial_configuration(std::vector<Aue> aues) {
  Configuration cfg;
  VarSet seen;
  for (const Aue& a : aues) {
    if (is_start_label(a.label)) {
      throw InputError("label '" + a.label + "' uses the reserved start-label suffix");
    }
    if (!seen.insert(a.label).second) throw InputError("duplicate AUE label '" + a.label + "'");
  }
  for (const Aue& a : aues) cfg.subst.bind(start_label(a.label), Term::var(a.label));
  cfg.unsolved = std::move(aues);
  return cfg;
}

VarSet input_variables(const Configuration& cfg) {
  VarSet out;
  for (const auto* part : {&cfg.unsolved, &cfg.store, &cfg.abstraction}) {
    for (const Aue& a : *part) {
      collect_vars(a.left, out);
      collect_vars(a.right, out);
    }
  }
  return out;
}

namespace {

bool contains_nested_wildcard(const Term& t) {
  if (t.is_var()) return false;
  return std::any_of(t.args().begin(), t.args().end(), [](const Term& a) {
    return a.is_wildcard() || contains_nested_wildcard(a);
  });
}

void check_part(const std::vector<Aue>& part, const char* name, const Theory& theory,
                std::vector<std::string>& out) {
  VarSet seen;
  for (const Aue& a : part) {
    if (!seen.insert(a.label).second) {
      out.push_back(std::string(name) + ": label " + a.label + " occurs twice");
    }
    for (const Term* side : {&a.left, &a.right}) {
      if (!is_normal(*side, theory)) {
        out.push_back(std::string(name) + ": " + a.label + " has a side not in Abs-normal form: " +
                      to_string(*side));
      }
      if (contains_nested_wildcard(*side)) {
        out.push_back(std::string(name) + ": " + a.label + " has a nested wild card");
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_configuration(const Configuration& cfg, const Theory& theory,
                                                const VarSet& opaque) {
  std::vector<std::string> out;
  check_part(cfg.unsolved, "unsolved", theory, out);
  check_part(cfg.store, "store", theory, out);
  check_part(cfg.abstraction, "abstraction", theory, out);

  // (i) labels(A), labels(S), labels(T) and Dom(theta) pairwise disjoint.
  struct Named {
    const char* name;
    VarSet set;
  };
  std::vector<Named> groups = {
      {"unsolved", {}}, {"store", {}}, {"abstraction", {}}, {"Dom(theta)", cfg.subst.domain()}};
  for (const Aue& a : cfg.unsolved) groups[0].set.insert(a.label);
  for (const Aue& a : cfg.store) groups[1].set.insert(a.label);
  for (const Aue& a : cfg.abstraction) groups[2].set.insert(a.label);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      for (const std::string& x : groups[i].set) {
        if (groups[j].set.count(x)) {
          out.push_back("label " + x + " is in both " + groups[i].name + " and " + groups[j].name);
        }
      }
    }
  }

  // (ii) Rvar(theta) = labels(A) u labels(S) u labels(T).
  VarSet all_labels;
  for (std::size_t i = 0; i < 3; ++i) all_labels.insert(groups[i].set.begin(), groups[i].set.end());
  VarSet rvar;
  for (const std::string& x : cfg.subst.range_vars()) {
    if (!opaque.count(x)) rvar.insert(x);
  }
  for (const std::string& x : rvar) {
    if (!all_labels.count(x)) out.push_back("Rvar(theta) contains " + x + ", which labels no AUE");
  }
  for (const std::string& x : all_labels) {
    if (!rvar.count(x)) out.push_back("label " + x + " does not occur in Ran(theta)");
  }

  for (const Term& t : cfg.subst.range()) {
    if (!is_normal(t, theory)) out.push_back("theta has a binding not in Abs-normal form: " + to_string(t));
    if (t.is_wildcard() || contains_nested_wildcard(t)) out.push_back("theta mentions the wild card");
  }

  auto safe_class = [&](const Aue& a) -> std::optional<AueClass> {
    try {
      return classify_aue(a, theory);
    } catch (const InvariantError&) {
      return std::nullopt;
    }
  };
  for (const Aue& a : cfg.unsolved) {
    if (a.is_wild()) out.push_back("unsolved AUE " + a.label + " is wild");
  }
  for (const Aue& a : cfg.store) {
    if (safe_class(a) != AueClass::Solved) out.push_back("store AUE " + a.label + " is not solved");
  }
  for (const Aue& a : cfg.abstraction) {
    if (!a.is_wild() || (a.left.is_wildcard() && a.right.is_wildcard())) {
      out.push_back("abstraction AUE " + a.label + " is not wild on exactly one side");
    }
  }
  return out;
}

}  // namespace absau
