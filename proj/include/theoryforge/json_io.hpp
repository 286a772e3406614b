#pragma once

#include <json.hpp>
#include <string>

#include "theoryforge/metamodel.hpp"

namespace theoryforge {

using Json = nlohmann::ordered_json;

/// Canonical machine-readable form of a theory. Round-trips losslessly with
/// the DSL except comments and whitespace.
Json theory_to_json(const Theory& theory);

/// Rebuilds a theory from its JSON form. Throws Error(format) on malformed
/// documents; semantic problems are left to validate().
Theory theory_from_json(const Json& document, const std::string& filename = "<json>");

/// Parses JSON text into a theory. Throws Error(format) on syntax errors.
Theory theory_from_json_text(const std::string& text, const std::string& filename = "<json>");

}  // namespace theoryforge
