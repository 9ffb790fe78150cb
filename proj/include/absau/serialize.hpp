#pragma once

#include <json.hpp>

#include "absau/config.hpp"
#include "absau/engine.hpp"

namespace absau {

using Json = nlohmann::ordered_json;

Json to_json(const Aue& aue);
Json to_json(const Substitution& sigma);
/// {"unsolved": [...], "store": [...], "abstraction": [...], "subst": {...}}
Json to_json(const Configuration& cfg);
/// [{"rule": ..., "target": ..., "result": {...}}, ...]
Json to_json(const Derivation& d);

/// Inverse of to_json(Configuration). Terms are parsed against `theory`
/// with the wild card allowed. Throws InputError on malformed input.
Configuration configuration_from_json(const Json& j, const Theory& theory);

}  // namespace absau
