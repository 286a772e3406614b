#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "theoryforge/metamodel.hpp"

namespace theoryforge {

/// Outcome of parsing: either a structurally valid Theory (possibly with
/// warnings) or a nonempty list of diagnostics containing at least one error.
/// Never both, never neither.
struct ParseResult {
    std::optional<Theory> theory;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return theory.has_value(); }
};

// Grammar. Line comments start with '#'. STRING is double-quoted with
// backslash escapes (\" \\ \n \t \r); IDENT is [A-Za-z_][A-Za-z0-9_-]*.
// A name is IDENT or STRING (quotes are required for names that are not
// lexable as IDENT, e.g. "Platform Service"); a token likewise.
//
//   theory      := "theory" STRING "{" item* "}"
//   item        := construct | proposition | archetype
//   construct   := "construct" name STRING? "{" variable* "}"
//   variable    := "variable" name "{" token ("," token)* "}" varclause*
//   varclause   := "ordering" "=" token ("<" token)+        # ascending
//                | "absent"   "=" token
//   proposition := "proposition" IDENT kind flag? "relates" ref "->" ref
//                  "text" STRING ("quote" STRING STRING)* ("template" STRING)?
//   kind        := "categoric" | "sequential" | "determinant"
//   flag        := "strategic" | "taxonomic"                # default: strategic
//   ref         := name "." (name | "*")
//   archetype   := "archetype" name "{" (name "." name "=" token)* "}"
//
// UTF-8 input required; a leading byte-order mark is skipped. Names and
// indicator tokens are trimmed of surrounding whitespace; free text
// (definitions, proposition text, quotations, templates) is kept verbatim.
ParseResult parse_theory(std::string_view source, const std::string& filename = "<input>");

/// Canonical text form. parse_theory(serialize_theory(t)) is structurally
/// equal to t for every valid theory (comments and layout excluded).
std::string serialize_theory(const Theory& theory);

/// True when `name` can be emitted without quotes.
bool is_bare_identifier(std::string_view name);

}  // namespace theoryforge
