#pragma once

#include <optional>
#include <string>
#include <vector>

#include "theoryforge/refine.hpp"

namespace theoryforge {

/// The empirical testing protocol derived from retained hypotheses:
/// per-hypothesis research statements, measured variables with their full
/// indicator scales, closed question stubs, and trace summary lines.
struct ProtocolQuestion {
    std::string variable;               // declared variable name
    std::string display;                // prompt wording for the variable
    std::vector<std::string> options;   // the full indicator scale, order preserved
    std::string prompt;                 // "Which best describes <display>?"
};

struct ProtocolEntry {
    std::string proposition;
    std::string proposition_text;
    std::string hypothesis;
    std::string statement;
    bool refuted = false;
    std::string refutation_reason;
    std::vector<ProtocolQuestion> questions;
    std::string trace;
    std::string discussion_prompt;  // free-text probe quoting the proposition
};

struct ProtocolDocument {
    std::string theory;
    std::optional<std::string> archetype;
    std::string header_note;  // set when there is nothing to test
    std::vector<ProtocolEntry> entries;  // proposition order, then hypothesis id order
};

/// Builds the protocol from the refinement run. With an archetype the entries
/// are limited to the archetype-consistent retained hypotheses; the archetype
/// is checked first (Error on unknown name or failed check). An empty
/// retained set yields a header-only document, not an error.
ProtocolDocument emit_protocol(const Theory& theory, const RefinementRun& run,
                               const std::optional<std::string>& archetype_name = std::nullopt);

std::string protocol_to_markdown(const ProtocolDocument& document);
Json protocol_to_json(const ProtocolDocument& document);

}  // namespace theoryforge
