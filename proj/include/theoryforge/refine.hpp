#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "theoryforge/enumerate.hpp"
#include "theoryforge/metamodel.hpp"
#include "theoryforge/rules.hpp"

namespace theoryforge {

/// AND/OR tree over (variable = token) atoms.
struct Expr {
    enum class Op { atom, all_of, any_of };

    struct Atom {
        std::string variable;
        std::string value;

        bool operator==(const Atom&) const = default;
    };

    Op op = Op::atom;
    Atom atom;
    std::vector<Expr> terms;

    static Expr make_atom(std::string variable, std::string value);
    static Expr make_all_of(std::vector<Expr> terms);
    static Expr make_any_of(std::vector<Expr> terms);

    bool evaluate(const std::function<bool(const Atom&)>& truth) const;
    /// Every distinct atom in the tree, in first-appearance order.
    std::vector<Atom> atoms() const;
    std::string display() const;  // e.g. "(a=1 AND b=2)"

    bool operator==(const Expr&) const = default;
};

struct Implication {
    Expr antecedent;
    Expr consequent;

    bool operator==(const Implication&) const = default;
};

enum class HypothesisStatus {
    candidate,        // still in flight; finalized to retained at pipeline end
    retained,
    pruned_absence,
    pruned_abductive,
    merged_away,
    decomposed_away,
};

std::string to_string(HypothesisStatus status);

/// A hypothesis record after refinement. Cell-level records wrap exactly one
/// grid cell; gradient merges wrap the cells of one transition.
struct RefinedHypothesis {
    struct Transition {
        std::string variable;
        std::string lo;
        std::string hi;
    };

    std::string id;  // "H<propOrdinal>.<k>"
    std::string proposition;
    InteractionKind kind = InteractionKind::categoric;
    std::string statement;
    std::vector<std::string> cells;  // constituent cell ids, grid order
    HypothesisStatus status = HypothesisStatus::candidate;
    std::string rationale;  // required whenever status is not retained/candidate
    Implication expression;
    std::optional<Transition> transition;
    bool refuted = false;  // `refute` annotation; status stays retained
    std::string refutation_reason;
};

// ---------------------------------------------------------------------------
// Statement templates. One default per interaction kind; a proposition's
// template_override replaces the default for its terminal hypotheses.
// Placeholders: {left_var} {left_ind} {right_var} {right_ind} (cells) and
// {left_var} {left_ind} {right_var} {right_lo} {right_hi} (transitions).
// ---------------------------------------------------------------------------

inline constexpr const char* kCategoricCellTemplate =
    "The presence of {left_var}={left_ind} is associated with {right_var}={right_ind}.";
inline constexpr const char* kTransitionTemplate =
    "As {left_var} is {left_ind}, {right_var} tends to shift from {right_lo} to {right_hi}.";
inline constexpr const char* kDeterminantTemplate =
    "The {right_var} is proportional to the level of {left_var}.";

struct StatementContext {
    std::string left_var;
    std::string left_ind;
    std::string right_var;
    std::optional<std::string> right_ind;
    std::optional<std::string> right_lo;
    std::optional<std::string> right_hi;
};

/// Fills `statement_template` from the context. Throws Error(template_error)
/// when the template references a placeholder that is unavailable (e.g.
/// {right_hi} in a categoric cell statement) or unknown.
std::string render_statement(const std::string& statement_template,
                             const StatementContext& context);

std::string statement_for_cell(const Proposition& prop, const HypothesisCell& cell);
std::string statement_for_transition(const Proposition& prop, const std::string& left_token,
                                     const std::string& right_variable, const std::string& lo,
                                     const std::string& hi);

// ---------------------------------------------------------------------------
// Refinement operations, applied in pipeline order.
// ---------------------------------------------------------------------------

struct StrategicPartition {
    std::vector<const Proposition*> strategic;
    std::vector<std::pair<const Proposition*, std::string>> excluded;  // (prop, reason)
};

StrategicPartition select_strategic(const Theory& theory);

/// One record per grid cell. Cells whose left token equals the declared
/// absence value get pruned_absence (categoric/sequential kinds only); the
/// rest stay candidate. Ids follow the grid ("H<p>.<k>" aligned with cell k).
std::vector<RefinedHypothesis> prune_absence(const HypothesisGrid& grid, const Theory& theory);

/// Merges candidate cells over ordered right variables into transition
/// hypotheses, one per consecutive ordering pair. Triggers for sequential
/// propositions and for categoric ones whose right variables carry an
/// ordering; determinant propositions pass through unchanged. When any merge
/// happens, records are renumbered: merged hypotheses first in generation
/// order (right variables in resolution order, then left tokens in column
/// order, then pairs ascending), then surviving cells, then pruned cells,
/// then merged-away cells, each group in grid order.
/// Throws Error(refinement) for an unordered right variable in a sequential
/// proposition.
std::vector<RefinedHypothesis> merge_gradient(std::vector<RefinedHypothesis> records,
                                              const HypothesisGrid& grid,
                                              const Theory& theory);

/// Splits a top-level OR antecedent into one hypothesis per disjunct
/// (nested ORs are flattened); AND antecedents are preserved intact. For an
/// OR input returns {original marked decomposed_away, children...}; anything
/// else returns {input} unchanged.
std::vector<RefinedHypothesis> decompose_compound(const RefinedHypothesis& hypothesis);

struct RuleAudit {
    std::size_t rule_index = 0;  // 0-based position in the rules file
    std::string action;
    std::string target;
    std::string reason;
    std::vector<std::string> matched;  // hypothesis ids
};

struct ReviewOutcome {
    std::vector<RefinedHypothesis> hypotheses;
    std::vector<RuleAudit> audit;
};

/// Applies review rules first-match-wins in file order: the first prune or
/// retain matching a candidate decides its fate; refute annotates without
/// removing. Predicate atoms match a hypothesis when some constituent cell
/// binds the atom's (variable, token) pair, hence the grids. Throws
/// Error(review) for unknown target ids or unresolvable predicate atoms.
ReviewOutcome abductive_review(std::vector<RefinedHypothesis> hypotheses,
                               const std::vector<ReviewRule>& rules, const Theory& theory,
                               const std::vector<HypothesisGrid>& grids);

// ---------------------------------------------------------------------------
// Whole-theory pipeline.
// ---------------------------------------------------------------------------

struct PropositionRefinement {
    std::string proposition;
    int ordinal = 0;
    InteractionKind kind = InteractionKind::categoric;
    HypothesisGrid grid;
    std::vector<RefinedHypothesis> hypotheses;  // every record, all statuses
    std::vector<std::string> notes;
};

struct RefinementRun {
    std::vector<PropositionRefinement> propositions;  // strategic, declaration order
    std::vector<SkippedProposition> skipped;          // taxonomic
    std::vector<RuleAudit> audit;

    std::vector<const RefinedHypothesis*> retained() const;
    const RefinedHypothesis* find_hypothesis(const std::string& id) const;
    const HypothesisGrid* find_grid(const std::string& proposition_id) const;
};

/// enumerate -> prune_absence -> merge_gradient -> decompose_compound ->
/// abductive_review -> finalize (candidates become retained).
RefinementRun refine_theory(const Theory& theory, const std::vector<ReviewRule>& rules = {});

Json refinement_to_json(const RefinementRun& run);
std::string refinement_to_table(const RefinementRun& run);

/// Natural ordering for generated ids: "H1.2" < "H1.10", cells likewise.
bool natural_id_less(const std::string& a, const std::string& b);

}  // namespace theoryforge
