#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "asyncmodel/limit.hpp"

namespace asyncmodel {

using json = nlohmann::json;

// Signal files: {"initial": 0|1, "transitions": [["p/q", 0|1], ...]}.
json signal_to_json(const Signal& x);
Signal signal_from_json(const json& j);

// {"arity": m, "table": "0001"}; table index follows row_of.
json fn_to_json(const BoolFn& f);
BoolFn fn_from_json(const json& j);

/// Model files. Kinds: flc, blc, bailc, sol, sc, mc, scf, serial, meet, join.
/// A "serial" node is [outer, inner...] decided by witness search; closed forms
/// are written under their own kind.
json model_to_json(const LimitCondition& i);
LimitCondition model_from_json(const json& j);

/// Throws model_error(parse_error) on unreadable or malformed files.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace asyncmodel
