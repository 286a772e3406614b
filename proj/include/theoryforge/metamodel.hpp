#pragma once

#include <optional>
#include <string>
#include <vector>

#include "theoryforge/diagnostics.hpp"

namespace theoryforge {

/// Finite set of indicator tokens a variable can take. Declaration order is
/// the display/grid order. `ordering`, when nonempty, is an ascending gradient
/// over the same tokens; `absence` marks the token meaning "not present".
struct IndicatorDomain {
    std::vector<std::string> values;
    std::vector<std::string> ordering;
    std::optional<std::string> absence;

    bool operator==(const IndicatorDomain&) const = default;

    bool contains(const std::string& token) const;
    bool has_ordering() const { return !ordering.empty(); }
    /// Position of `token` in the ascending ordering, if any.
    std::optional<std::size_t> rank(const std::string& token) const;
};

struct Variable {
    std::string name;
    IndicatorDomain domain;
    SourceSpan span;

    bool operator==(const Variable& other) const {
        return name == other.name && domain == other.domain;
    }
};

struct Construct {
    std::string name;
    std::string definition;
    std::vector<Variable> variables;
    SourceSpan span;

    bool operator==(const Construct& other) const {
        return name == other.name && definition == other.definition &&
               variables == other.variables;
    }

    const Variable* find_variable(const std::string& variable_name) const;
};

/// Reference to one variable of a construct, or to all of them (wildcard).
struct VariableRef {
    std::string construct;
    std::optional<std::string> variable;  // nullopt = all variables

    bool is_wildcard() const { return !variable.has_value(); }
    std::string display() const;

    bool operator==(const VariableRef&) const = default;
};

struct Quotation {
    std::string source;
    std::string excerpt;
    SourceSpan span;

    bool operator==(const Quotation& other) const {
        return source == other.source && excerpt == other.excerpt;
    }
};

enum class InteractionKind { categoric, sequential, determinant };

std::string to_string(InteractionKind kind);
std::optional<InteractionKind> interaction_kind_from(const std::string& word);

struct Proposition {
    std::string id;
    InteractionKind kind = InteractionKind::categoric;
    bool strategic = true;
    VariableRef left;
    VariableRef right;
    std::string text;
    std::vector<Quotation> quotes;
    std::optional<std::string> template_override;
    SourceSpan span;

    bool operator==(const Proposition& other) const {
        return id == other.id && kind == other.kind && strategic == other.strategic &&
               left == other.left && right == other.right && text == other.text &&
               quotes == other.quotes && template_override == other.template_override;
    }
};

/// Partial assignment of indicator tokens to variables, naming one
/// team-structure instantiation. Unassigned variables are unconstrained.
struct Archetype {
    struct Assignment {
        std::string construct;
        std::string variable;
        std::string value;
        SourceSpan span;

        bool operator==(const Assignment& other) const {
            return construct == other.construct && variable == other.variable &&
                   value == other.value;
        }
    };

    std::string name;
    std::vector<Assignment> assignments;  // declaration order; (construct, variable) unique
    SourceSpan span;

    const Assignment* find(const std::string& construct, const std::string& variable) const;

    bool operator==(const Archetype& other) const {
        return name == other.name && assignments == other.assignments;
    }
};

/// The parsed conceptual model: constructs, propositions, and archetypes.
/// Values are immutable after construction; safe to share across workers.
struct Theory {
    std::string name;
    std::vector<Construct> constructs;
    std::vector<Proposition> propositions;
    std::vector<Archetype> archetypes;
    SourceSpan span;

    bool operator==(const Theory& other) const {
        return name == other.name && constructs == other.constructs &&
               propositions == other.propositions && archetypes == other.archetypes;
    }

    const Construct* find_construct(const std::string& construct_name) const;
    const Proposition* find_proposition(const std::string& proposition_id) const;
    const Archetype* find_archetype(const std::string& archetype_name) const;
    /// 1-based declaration position of a proposition; nullopt if unknown.
    std::optional<int> proposition_ordinal(const std::string& proposition_id) const;
};

struct ResolvedVariable {
    const Construct* construct = nullptr;
    const Variable* variable = nullptr;
};

/// Structural validation. Empty error list iff all metamodel invariants hold;
/// warnings for zero-variable constructs, propositions without quotations,
/// and archetypes without assignments. Pure: same theory, same diagnostics.
std::vector<Diagnostic> validate(const Theory& theory);

/// Resolves a reference to concrete (construct, variable) pairs. A wildcard
/// yields the construct's variables in declaration order (possibly none, for
/// taxonomy-only constructs). Throws Error(resolution) carrying the dangling
/// name when the construct or variable does not exist.
std::vector<ResolvedVariable> resolve(const Theory& theory, const VariableRef& ref);

}  // namespace theoryforge
