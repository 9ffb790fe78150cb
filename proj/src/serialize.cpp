#include "absau/serialize.hpp"

namespace absau {

Json to_json(const Aue& aue) {
  return Json{{"label", aue.label}, {"left", to_string(aue.left)}, {"right", to_string(aue.right)}};
}

Json to_json(const Substitution& sigma) {
  Json j = Json::object();
  for (const auto& [x, t] : sigma) j[x] = to_string(t);
  return j;
}

namespace {

Json aue_list(const std::vector<Aue>& aues) {
  Json j = Json::array();
  for (const Aue& a : aues) j.push_back(to_json(a));
  return j;
}

std::vector<Aue> aues_from_json(const Json& j, const char* key, const Theory& theory) {
  std::vector<Aue> out;
  if (!j.contains(key)) return out;
  const Json& list = j.at(key);
  if (!list.is_array()) throw InputError(std::string("'") + key + "' must be an array");
  ParseOptions opts{.allow_wildcard = true};
  for (const Json& item : list) {
    if (!item.is_object() || !item.contains("label") || !item.contains("left") ||
        !item.contains("right")) {
      throw InputError(std::string("entries of '") + key + "' need label, left and right");
    }
    out.push_back({item.at("label").get<std::string>(),
                   parse_term(item.at("left").get<std::string>(), theory, opts),
                   parse_term(item.at("right").get<std::string>(), theory, opts)});
  }
  return out;
}

}  // namespace

Json to_json(const Configuration& cfg) {
  return Json{{"unsolved", aue_list(cfg.unsolved)},
              {"store", aue_list(cfg.store)},
              {"abstraction", aue_list(cfg.abstraction)},
              {"subst", to_json(cfg.subst)}};
}

Json to_json(const Derivation& d) {
  Json steps = Json::array();
  for (const DerivationStep& s : d.steps) {
    steps.push_back(Json{{"rule", to_string(s.rule)}, {"target", s.target}, {"result", to_json(s.result)}});
  }
  return steps;
}

Configuration configuration_from_json(const Json& j, const Theory& theory) {
  if (!j.is_object()) throw InputError("configuration must be a JSON object");
  try {
    Configuration cfg;
    cfg.unsolved = aues_from_json(j, "unsolved", theory);
    cfg.store = aues_from_json(j, "store", theory);
    cfg.abstraction = aues_from_json(j, "abstraction", theory);
    if (j.contains("subst")) {
      for (const auto& [x, t] : j.at("subst").items()) {
        cfg.subst.bind(x, parse_term(t.get<std::string>(), theory));
      }
    }
    return cfg;
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad configuration JSON: ") + e.what());
  }
}

}  // namespace absau
