#pragma once

#include <string>
#include <vector>

#include "theoryforge/diagnostics.hpp"

namespace theoryforge {

/// One abductive review judgment. Line-oriented file format ('#' comments):
///
///   prune  cell h1.10                      reason "implausible combination"
///   prune  where P1 quality=low            reason "contradicts enablement"
///   refute H2.3                            reason "interview E4 contradicts"
///   retain H1.1                            reason "core claim"
///
/// `refute` annotates a hypothesis as refuted-by-evidence for the testing
/// phase; it removes nothing. Rules apply first-match-wins in file order.
struct ReviewRule {
    enum class Action { prune, refute, retain };
    enum class TargetKind { cell, hypothesis, predicate };

    struct Atom {
        std::string variable;
        std::string value;
    };

    Action action = Action::prune;
    TargetKind target = TargetKind::hypothesis;
    std::string id;                // cell id, hypothesis id, or proposition id (predicate)
    std::vector<Atom> atoms;       // predicate only, all must match
    std::string reason;            // mandatory
    SourceSpan span;
};

std::string to_string(ReviewRule::Action action);

struct RulesParseResult {
    std::vector<ReviewRule> rules;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

RulesParseResult parse_rules(std::string_view source, const std::string& filename = "<rules>");

}  // namespace theoryforge
