#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "relimp/simgen.hpp"

namespace relimp {

using TomlValue = std::variant<std::int64_t, double, bool, std::string, std::vector<std::string>>;

/// Strict TOML subset: `key = value` lines with quoted strings, integers,
/// floats, booleans, and arrays of strings; `#` comments; optional
/// [section] headers are ignored. Everything the simulate config needs.
std::map<std::string, TomlValue> parse_toml_file(const std::string& path);

/// Applies recognized keys (p_min, p_max, n_ev, n_seeds, n_responses, r2,
/// seed, out, orth, realloc, per_response, threads, map_tol, map_max_iter)
/// onto the config. Unknown keys raise InvalidConfig.
void apply_toml(const std::map<std::string, TomlValue>& values, SimulationConfig& config);

std::vector<OrthMethod> parse_orth_set(const std::vector<std::string>& tags);
std::vector<ReallocMethod> parse_realloc_set(const std::vector<std::string>& tags);

} // namespace relimp
