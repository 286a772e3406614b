#include "theoryforge/refine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "theoryforge/errors.hpp"

namespace theoryforge {

// ---------------------------------------------------------------------------
// Expr
// ---------------------------------------------------------------------------

Expr Expr::make_atom(std::string variable, std::string value) {
    Expr e;
    e.op = Op::atom;
    e.atom = {std::move(variable), std::move(value)};
    return e;
}

Expr Expr::make_all_of(std::vector<Expr> terms) {
    Expr e;
    e.op = Op::all_of;
    e.terms = std::move(terms);
    return e;
}

Expr Expr::make_any_of(std::vector<Expr> terms) {
    Expr e;
    e.op = Op::any_of;
    e.terms = std::move(terms);
    return e;
}

bool Expr::evaluate(const std::function<bool(const Atom&)>& truth) const {
    switch (op) {
        case Op::atom: return truth(atom);
        case Op::all_of:
            return std::all_of(terms.begin(), terms.end(),
                               [&](const Expr& t) { return t.evaluate(truth); });
        case Op::any_of:
            return std::any_of(terms.begin(), terms.end(),
                               [&](const Expr& t) { return t.evaluate(truth); });
    }
    return false;
}

namespace {
void collect_atoms(const Expr& e, std::vector<Expr::Atom>& out) {
    if (e.op == Expr::Op::atom) {
        if (std::find(out.begin(), out.end(), e.atom) == out.end()) out.push_back(e.atom);
        return;
    }
    for (const auto& t : e.terms) collect_atoms(t, out);
}
}  // namespace

std::vector<Expr::Atom> Expr::atoms() const {
    std::vector<Atom> out;
    collect_atoms(*this, out);
    return out;
}

std::string Expr::display() const {
    if (op == Op::atom) return atom.variable + "=" + atom.value;
    std::string joiner = op == Op::all_of ? " AND " : " OR ";
    std::string out = "(";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) out += joiner;
        out += terms[i].display();
    }
    out += ")";
    return out;
}

std::string to_string(HypothesisStatus status) {
    switch (status) {
        case HypothesisStatus::candidate: return "candidate";
        case HypothesisStatus::retained: return "retained";
        case HypothesisStatus::pruned_absence: return "pruned_absence";
        case HypothesisStatus::pruned_abductive: return "pruned_abductive";
        case HypothesisStatus::merged_away: return "merged_away";
        case HypothesisStatus::decomposed_away: return "decomposed_away";
    }
    return "candidate";
}

// ---------------------------------------------------------------------------
// Statement rendering
// ---------------------------------------------------------------------------

std::string render_statement(const std::string& statement_template,
                             const StatementContext& context) {
    std::string out;
    std::size_t i = 0;
    while (i < statement_template.size()) {
        char c = statement_template[i];
        if (c != '{') {
            out += c;
            ++i;
            continue;
        }
        std::size_t close = statement_template.find('}', i);
        if (close == std::string::npos) {
            throw Error(ErrorKind::template_error,
                        "unterminated placeholder in statement template");
        }
        std::string name = statement_template.substr(i + 1, close - i - 1);
        std::optional<std::string> value;
        if (name == "left_var") value = context.left_var;
        else if (name == "left_ind") value = context.left_ind;
        else if (name == "right_var") value = context.right_var;
        else if (name == "right_ind") value = context.right_ind;
        else if (name == "right_lo") value = context.right_lo;
        else if (name == "right_hi") value = context.right_hi;
        else {
            throw Error(ErrorKind::template_error,
                        "unknown placeholder {" + name + "} in statement template", name);
        }
        if (!value) {
            throw Error(ErrorKind::template_error,
                        "placeholder {" + name + "} is unavailable in this statement context",
                        name);
        }
        out += *value;
        i = close + 1;
    }
    return out;
}

namespace {

std::string default_cell_template(InteractionKind kind) {
    switch (kind) {
        case InteractionKind::determinant: return kDeterminantTemplate;
        case InteractionKind::categoric:
        case InteractionKind::sequential: return kCategoricCellTemplate;
    }
    return kCategoricCellTemplate;
}

StatementContext cell_context(const HypothesisCell& cell) {
    StatementContext ctx;
    ctx.left_var = cell.left.variable;
    ctx.left_ind = cell.left.value;
    ctx.right_var = cell.right.variable;
    ctx.right_ind = cell.right.value;
    return ctx;
}

std::string default_statement_for_cell(InteractionKind kind, const HypothesisCell& cell) {
    return render_statement(default_cell_template(kind), cell_context(cell));
}

}  // namespace

std::string statement_for_cell(const Proposition& prop, const HypothesisCell& cell) {
    const std::string& tmpl =
        prop.template_override ? *prop.template_override : default_cell_template(prop.kind);
    return render_statement(tmpl, cell_context(cell));
}

std::string statement_for_transition(const Proposition& prop, const std::string& left_token,
                                     const std::string& right_variable, const std::string& lo,
                                     const std::string& hi) {
    StatementContext ctx;
    ctx.left_var = prop.left.variable ? *prop.left.variable : prop.left.construct;
    ctx.left_ind = left_token;
    ctx.right_var = right_variable;
    ctx.right_lo = lo;
    ctx.right_hi = hi;
    const std::string& tmpl =
        prop.template_override ? *prop.template_override : kTransitionTemplate;
    return render_statement(tmpl, ctx);
}

// ---------------------------------------------------------------------------
// Strategic filter
// ---------------------------------------------------------------------------

StrategicPartition select_strategic(const Theory& theory) {
    StrategicPartition out;
    for (const auto& prop : theory.propositions) {
        if (prop.strategic) {
            out.strategic.push_back(&prop);
        } else {
            out.excluded.push_back({&prop, "taxonomic"});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Absence pruning
// ---------------------------------------------------------------------------

std::vector<RefinedHypothesis> prune_absence(const HypothesisGrid& grid, const Theory& theory) {
    const Proposition* prop = theory.find_proposition(grid.proposition);
    if (prop == nullptr) {
        throw Error(ErrorKind::unknown_id, "unknown proposition '" + grid.proposition + "'",
                    grid.proposition);
    }

    std::optional<std::string> absence;
    // Existence semantics: the absence rule applies to categoric and
    // sequential interactions only, and only when the left domain declares it.
    if (grid.kind != InteractionKind::determinant && !grid.left_variable.empty()) {
        const Construct* c = theory.find_construct(grid.left_construct);
        const Variable* v = c != nullptr ? c->find_variable(grid.left_variable) : nullptr;
        if (v != nullptr) absence = v->domain.absence;
    }

    std::vector<RefinedHypothesis> records;
    records.reserve(grid.cells.size());
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
        const HypothesisCell& cell = grid.cells[i];
        RefinedHypothesis h;
        h.id = "H" + std::to_string(grid.ordinal) + "." + std::to_string(i + 1);
        h.proposition = grid.proposition;
        h.kind = grid.kind;
        h.cells = {cell.id};
        h.statement = default_statement_for_cell(grid.kind, cell);
        h.expression = {Expr::make_atom(cell.left.variable, cell.left.value),
                        Expr::make_atom(cell.right.variable, cell.right.value)};
        if (absence && cell.left.value == *absence) {
            h.status = HypothesisStatus::pruned_absence;
            h.rationale = "left token '" + cell.left.value +
                          "' is the declared absence value of " + grid.left_construct + "." +
                          grid.left_variable;
        } else {
            h.status = HypothesisStatus::candidate;
        }
        records.push_back(std::move(h));
    }
    return records;
}

// ---------------------------------------------------------------------------
// Gradient merging
// ---------------------------------------------------------------------------

namespace {

int cell_position(const HypothesisGrid& grid, const HypothesisCell& cell) {
    return cell.row * static_cast<int>(grid.columns.size()) + cell.column;
}

const HypothesisCell* cell_at(const HypothesisGrid& grid, const std::string& variable,
                              const std::string& row_value, const std::string& column_value) {
    for (const auto& cell : grid.cells) {
        if (cell.right.variable == variable && cell.right.value == row_value &&
            cell.left.value == column_value) {
            return &cell;
        }
    }
    return nullptr;
}

}  // namespace

std::vector<RefinedHypothesis> merge_gradient(std::vector<RefinedHypothesis> records,
                                              const HypothesisGrid& grid,
                                              const Theory& theory) {
    const Proposition* prop = theory.find_proposition(grid.proposition);
    if (prop == nullptr) {
        throw Error(ErrorKind::unknown_id, "unknown proposition '" + grid.proposition + "'",
                    grid.proposition);
    }

    std::map<std::string, std::size_t> record_by_cell;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].cells.size() == 1) record_by_cell[records[i].cells.front()] = i;
    }

    std::vector<ResolvedVariable> right = resolve(theory, prop->right);
    if (grid.kind == InteractionKind::sequential) {
        for (const auto& rv : right) {
            if (!rv.variable->domain.has_ordering()) {
                throw Error(ErrorKind::refinement,
                            "sequential proposition '" + prop->id + "': right variable '" +
                                rv.variable->name + "' has no ordering",
                            rv.variable->name);
            }
        }
    }

    const bool mergeable_kind = grid.kind == InteractionKind::sequential ||
                                grid.kind == InteractionKind::categoric;

    struct Merge {
        RefinedHypothesis hypothesis;
        std::vector<std::size_t> absorbed;  // indexes into records
    };
    std::vector<Merge> merges;

    if (mergeable_kind) {
        // Generation order: right variables in resolution order, then left
        // tokens in column order, then adjacent ordering pairs ascending.
        for (const auto& rv : right) {
            const IndicatorDomain& domain = rv.variable->domain;
            if (!domain.has_ordering() || domain.ordering.size() < 2) continue;
            for (const auto& left_token : grid.columns) {
                for (std::size_t p = 0; p + 1 < domain.ordering.size(); ++p) {
                    const std::string& lo = domain.ordering[p];
                    const std::string& hi = domain.ordering[p + 1];
                    const HypothesisCell* lo_cell =
                        cell_at(grid, rv.variable->name, lo, left_token);
                    const HypothesisCell* hi_cell =
                        cell_at(grid, rv.variable->name, hi, left_token);
                    if (lo_cell == nullptr || hi_cell == nullptr) continue;
                    auto lo_found = record_by_cell.find(lo_cell->id);
                    auto hi_found = record_by_cell.find(hi_cell->id);
                    if (lo_found == record_by_cell.end() ||
                        hi_found == record_by_cell.end()) {
                        continue;
                    }
                    std::size_t lo_idx = lo_found->second;
                    std::size_t hi_idx = hi_found->second;
                    if (records[lo_idx].status != HypothesisStatus::candidate ||
                        records[hi_idx].status != HypothesisStatus::candidate) {
                        continue;  // pruned column; nothing to merge
                    }
                    Merge merge;
                    RefinedHypothesis& h = merge.hypothesis;
                    h.proposition = grid.proposition;
                    h.kind = grid.kind;
                    h.status = HypothesisStatus::candidate;
                    // Constituents listed in grid order, matching the cell ids.
                    const HypothesisCell* first = lo_cell;
                    const HypothesisCell* second = hi_cell;
                    if (cell_position(grid, *first) > cell_position(grid, *second)) {
                        std::swap(first, second);
                    }
                    h.cells = {first->id, second->id};
                    h.transition = RefinedHypothesis::Transition{rv.variable->name, lo, hi};
                    h.statement =
                        statement_for_transition(*prop, left_token, rv.variable->name, lo, hi);
                    h.expression = {
                        Expr::make_atom(grid.left_variable, left_token),
                        Expr::make_atom(rv.variable->name, hi),
                    };
                    merge.absorbed = {lo_idx, hi_idx};
                    merges.push_back(std::move(merge));
                }
            }
        }
    }

    if (merges.empty()) {
        // No gradient structure: candidates pass through. A template override,
        // when present, still replaces the default statement of the terminal
        // cell hypotheses.
        if (prop->template_override) {
            for (auto& record : records) {
                if (record.status != HypothesisStatus::candidate) continue;
                const HypothesisCell* cell = grid.find_cell(record.cells.front());
                if (cell != nullptr) record.statement = statement_for_cell(*prop, *cell);
            }
        }
        return records;
    }

    // Mark absorbed cells and renumber: merged hypotheses first in generation
    // order, then surviving cells, pruned cells, and merged-away cells in
    // grid order.
    std::map<std::size_t, std::vector<std::string>> absorbers;  // record idx -> merge ids
    int counter = 0;
    auto next_id = [&]() {
        return "H" + std::to_string(grid.ordinal) + "." + std::to_string(++counter);
    };

    std::vector<RefinedHypothesis> out;
    for (auto& merge : merges) {
        merge.hypothesis.id = next_id();
        for (std::size_t idx : merge.absorbed) {
            records[idx].status = HypothesisStatus::merged_away;
            absorbers[idx].push_back(merge.hypothesis.id);
        }
        out.push_back(std::move(merge.hypothesis));
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].status != HypothesisStatus::candidate) continue;
        records[i].id = next_id();
        if (prop->template_override) {
            const HypothesisCell* cell = grid.find_cell(records[i].cells.front());
            if (cell != nullptr) records[i].statement = statement_for_cell(*prop, *cell);
        }
        out.push_back(records[i]);
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].status != HypothesisStatus::pruned_absence) continue;
        records[i].id = next_id();
        out.push_back(records[i]);
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].status != HypothesisStatus::merged_away) continue;
        records[i].id = next_id();
        std::ostringstream rationale;
        rationale << "merged into ";
        const auto& ids = absorbers[i];
        for (std::size_t k = 0; k < ids.size(); ++k) {
            if (k > 0) rationale << ", ";
            rationale << ids[k];
        }
        records[i].rationale = rationale.str();
        out.push_back(records[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Compound decomposition
// ---------------------------------------------------------------------------

namespace {

void flatten_disjuncts(const Expr& e, std::vector<Expr>& out) {
    if (e.op == Expr::Op::any_of) {
        for (const auto& t : e.terms) flatten_disjuncts(t, out);
        return;
    }
    out.push_back(e);
}

std::string child_suffix(std::size_t index) {
    // a, b, ..., z, then x27, x28, ...
    if (index < 26) return std::string(1, static_cast<char>('a' + index));
    return "x" + std::to_string(index + 1);
}

}  // namespace

std::vector<RefinedHypothesis> decompose_compound(const RefinedHypothesis& hypothesis) {
    if (hypothesis.expression.antecedent.op != Expr::Op::any_of) {
        return {hypothesis};
    }
    std::vector<Expr> disjuncts;
    flatten_disjuncts(hypothesis.expression.antecedent, disjuncts);

    std::vector<RefinedHypothesis> out;
    RefinedHypothesis parent = hypothesis;
    parent.status = HypothesisStatus::decomposed_away;

    std::vector<std::string> child_ids;
    for (std::size_t i = 0; i < disjuncts.size(); ++i) {
        RefinedHypothesis child = hypothesis;
        child.id = hypothesis.id + child_suffix(i);
        child.status = HypothesisStatus::candidate;
        child.expression.antecedent = disjuncts[i];
        child.statement = "IF " + child.expression.antecedent.display() + " THEN " +
                          child.expression.consequent.display();
        child.rationale.clear();
        child_ids.push_back(child.id);
        out.push_back(std::move(child));
    }
    std::ostringstream rationale;
    rationale << "decomposed into ";
    for (std::size_t i = 0; i < child_ids.size(); ++i) {
        if (i > 0) rationale << ", ";
        rationale << child_ids[i];
    }
    parent.rationale = rationale.str();
    out.insert(out.begin(), std::move(parent));
    return out;
}

// ---------------------------------------------------------------------------
// Abductive review
// ---------------------------------------------------------------------------

namespace {

struct CellLookup {
    const HypothesisCell* find(const std::string& id) const {
        auto it = cells.find(id);
        return it == cells.end() ? nullptr : it->second;
    }
    std::map<std::string, const HypothesisCell*> cells;
};

CellLookup index_cells(const std::vector<HypothesisGrid>& grids) {
    CellLookup lookup;
    for (const auto& grid : grids) {
        for (const auto& cell : grid.cells) lookup.cells[cell.id] = &cell;
    }
    return lookup;
}

// An atom matches a hypothesis when some constituent cell binds it.
bool atom_matches(const ReviewRule::Atom& atom, const RefinedHypothesis& h,
                  const CellLookup& lookup) {
    for (const auto& cell_id : h.cells) {
        const HypothesisCell* cell = lookup.find(cell_id);
        if (cell == nullptr) continue;
        if ((cell->left.variable == atom.variable && cell->left.value == atom.value) ||
            (cell->right.variable == atom.variable && cell->right.value == atom.value)) {
            return true;
        }
    }
    return false;
}

bool rule_matches(const ReviewRule& rule, const RefinedHypothesis& h,
                  const CellLookup& lookup) {
    switch (rule.target) {
        case ReviewRule::TargetKind::hypothesis: return h.id == rule.id;
        case ReviewRule::TargetKind::cell:
            return std::find(h.cells.begin(), h.cells.end(), rule.id) != h.cells.end();
        case ReviewRule::TargetKind::predicate: {
            if (h.proposition != rule.id) return false;
            return std::all_of(
                rule.atoms.begin(), rule.atoms.end(),
                [&](const ReviewRule::Atom& atom) { return atom_matches(atom, h, lookup); });
        }
    }
    return false;
}

std::string rule_target_display(const ReviewRule& rule) {
    switch (rule.target) {
        case ReviewRule::TargetKind::hypothesis: return rule.id;
        case ReviewRule::TargetKind::cell: return "cell " + rule.id;
        case ReviewRule::TargetKind::predicate: {
            std::string out = "where " + rule.id;
            for (const auto& atom : rule.atoms) out += " " + atom.variable + "=" + atom.value;
            return out;
        }
    }
    return rule.id;
}

void validate_rules(const std::vector<ReviewRule>& rules,
                    const std::vector<RefinedHypothesis>& hypotheses, const Theory& theory,
                    const CellLookup& lookup) {
    std::set<std::string> hypothesis_ids;
    for (const auto& h : hypotheses) hypothesis_ids.insert(h.id);

    for (const auto& rule : rules) {
        switch (rule.target) {
            case ReviewRule::TargetKind::hypothesis:
                if (hypothesis_ids.count(rule.id) == 0) {
                    throw Error(ErrorKind::review,
                                to_string(rule.span) + ": rule targets unknown hypothesis '" +
                                    rule.id + "'",
                                rule.id);
                }
                break;
            case ReviewRule::TargetKind::cell:
                if (lookup.find(rule.id) == nullptr) {
                    throw Error(ErrorKind::review,
                                to_string(rule.span) + ": rule targets unknown cell '" +
                                    rule.id + "'",
                                rule.id);
                }
                break;
            case ReviewRule::TargetKind::predicate: {
                const Proposition* prop = theory.find_proposition(rule.id);
                if (prop == nullptr) {
                    throw Error(ErrorKind::review,
                                to_string(rule.span) +
                                    ": rule predicate names unknown proposition '" + rule.id +
                                    "'",
                                rule.id);
                }
                std::vector<ResolvedVariable> scope;
                for (const auto& rv : resolve(theory, prop->left)) scope.push_back(rv);
                for (const auto& rv : resolve(theory, prop->right)) scope.push_back(rv);
                for (const auto& atom : rule.atoms) {
                    auto it = std::find_if(scope.begin(), scope.end(),
                                           [&](const ResolvedVariable& rv) {
                                               return rv.variable->name == atom.variable;
                                           });
                    if (it == scope.end()) {
                        throw Error(ErrorKind::review,
                                    to_string(rule.span) + ": atom variable '" + atom.variable +
                                        "' is not a variable of proposition '" + rule.id + "'",
                                    atom.variable);
                    }
                    if (!it->variable->domain.contains(atom.value)) {
                        throw Error(ErrorKind::review,
                                    to_string(rule.span) + ": token '" + atom.value +
                                        "' is not in the domain of '" + atom.variable + "'",
                                    atom.value);
                    }
                }
                break;
            }
        }
    }
}

}  // namespace

ReviewOutcome abductive_review(std::vector<RefinedHypothesis> hypotheses,
                               const std::vector<ReviewRule>& rules, const Theory& theory,
                               const std::vector<HypothesisGrid>& grids) {
    CellLookup lookup = index_cells(grids);
    validate_rules(rules, hypotheses, theory, lookup);

    // Fate of each candidate is decided by the first prune/retain that
    // matches it; refute annotates independently.
    std::set<std::string> decided;
    ReviewOutcome outcome;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        const ReviewRule& rule = rules[r];
        RuleAudit audit;
        audit.rule_index = r;
        audit.action = to_string(rule.action);
        audit.target = rule_target_display(rule);
        audit.reason = rule.reason;
        for (auto& h : hypotheses) {
            if (h.status != HypothesisStatus::candidate) continue;
            if (!rule_matches(rule, h, lookup)) continue;
            switch (rule.action) {
                case ReviewRule::Action::prune:
                    if (decided.insert(h.id).second) {
                        h.status = HypothesisStatus::pruned_abductive;
                        h.rationale = rule.reason;
                        audit.matched.push_back(h.id);
                    }
                    break;
                case ReviewRule::Action::retain:
                    if (decided.insert(h.id).second) {
                        audit.matched.push_back(h.id);
                    }
                    break;
                case ReviewRule::Action::refute:
                    if (!h.refuted) {
                        h.refuted = true;
                        h.refutation_reason = rule.reason;
                    }
                    audit.matched.push_back(h.id);
                    break;
            }
        }
        outcome.audit.push_back(std::move(audit));
    }
    outcome.hypotheses = std::move(hypotheses);
    return outcome;
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

std::vector<const RefinedHypothesis*> RefinementRun::retained() const {
    std::vector<const RefinedHypothesis*> out;
    for (const auto& prop : propositions) {
        for (const auto& h : prop.hypotheses) {
            if (h.status == HypothesisStatus::retained) out.push_back(&h);
        }
    }
    return out;
}

const RefinedHypothesis* RefinementRun::find_hypothesis(const std::string& id) const {
    for (const auto& prop : propositions) {
        for (const auto& h : prop.hypotheses) {
            if (h.id == id) return &h;
        }
    }
    return nullptr;
}

const HypothesisGrid* RefinementRun::find_grid(const std::string& proposition_id) const {
    for (const auto& prop : propositions) {
        if (prop.proposition == proposition_id) return &prop.grid;
    }
    return nullptr;
}

RefinementRun refine_theory(const Theory& theory, const std::vector<ReviewRule>& rules) {
    RefinementRun run;
    StrategicPartition partition = select_strategic(theory);
    for (const auto& [prop, reason] : partition.excluded) {
        run.skipped.push_back({prop->id, reason});
    }

    for (const Proposition* prop : partition.strategic) {
        PropositionRefinement refinement;
        refinement.proposition = prop->id;
        refinement.ordinal = *theory.proposition_ordinal(prop->id);
        refinement.kind = prop->kind;
        refinement.grid = enumerate_grid(theory, prop->id);

        std::vector<RefinedHypothesis> records = prune_absence(refinement.grid, theory);
        records = merge_gradient(std::move(records), refinement.grid, theory);

        std::vector<RefinedHypothesis> expanded;
        for (const auto& record : records) {
            if (record.status == HypothesisStatus::candidate) {
                for (auto& part : decompose_compound(record)) expanded.push_back(std::move(part));
            } else {
                expanded.push_back(record);
            }
        }
        refinement.hypotheses = std::move(expanded);

        if (prop->kind == InteractionKind::determinant) {
            refinement.notes.push_back(
                "determinant proposition: no grid-reduction rule; all cells retained");
        }
        if (refinement.grid.cells.empty()) {
            refinement.notes.push_back(
                "taxonomy-level proposition: no measurable variables, empty grid");
        }
        run.propositions.push_back(std::move(refinement));
    }

    if (!rules.empty()) {
        std::vector<RefinedHypothesis> flat;
        std::vector<HypothesisGrid> grids;
        for (auto& prop : run.propositions) {
            grids.push_back(prop.grid);
            for (auto& h : prop.hypotheses) flat.push_back(std::move(h));
        }
        ReviewOutcome outcome = abductive_review(std::move(flat), rules, theory, grids);
        run.audit = std::move(outcome.audit);
        // Redistribute in the original per-proposition order.
        std::size_t cursor = 0;
        for (auto& prop : run.propositions) {
            for (auto& h : prop.hypotheses) {
                h = std::move(outcome.hypotheses[cursor++]);
            }
        }
    }

    for (auto& prop : run.propositions) {
        for (auto& h : prop.hypotheses) {
            if (h.status == HypothesisStatus::candidate) h.status = HypothesisStatus::retained;
        }
    }
    return run;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

namespace {

Json expr_to_json(const Expr& e) {
    if (e.op == Expr::Op::atom) {
        return Json{{"variable", e.atom.variable}, {"value", e.atom.value}};
    }
    Json out;
    out["op"] = e.op == Expr::Op::all_of ? "and" : "or";
    out["terms"] = Json::array();
    for (const auto& t : e.terms) out["terms"].push_back(expr_to_json(t));
    return out;
}

Json hypothesis_to_json(const RefinedHypothesis& h) {
    Json out;
    out["id"] = h.id;
    out["proposition"] = h.proposition;
    out["kind"] = to_string(h.kind);
    out["status"] = to_string(h.status);
    out["statement"] = h.statement;
    out["cells"] = h.cells;
    if (!h.rationale.empty()) out["rationale"] = h.rationale;
    if (h.transition) {
        out["transition"] = Json{{"variable", h.transition->variable},
                                 {"from", h.transition->lo},
                                 {"to", h.transition->hi}};
    }
    out["expression"] = Json{{"if", expr_to_json(h.expression.antecedent)},
                             {"then", expr_to_json(h.expression.consequent)}};
    if (h.refuted) {
        out["refuted"] = true;
        out["refutation_reason"] = h.refutation_reason;
    }
    return out;
}

}  // namespace

Json refinement_to_json(const RefinementRun& run) {
    Json out;
    out["propositions"] = Json::array();
    for (const auto& prop : run.propositions) {
        Json jp;
        jp["proposition"] = prop.proposition;
        jp["kind"] = to_string(prop.kind);
        jp["cells"] = prop.grid.cells.size();
        jp["notes"] = prop.notes;
        jp["hypotheses"] = Json::array();
        for (const auto& h : prop.hypotheses) jp["hypotheses"].push_back(hypothesis_to_json(h));
        out["propositions"].push_back(std::move(jp));
    }
    out["skipped"] = Json::array();
    for (const auto& skip : run.skipped) {
        out["skipped"].push_back(Json{{"id", skip.id}, {"reason", skip.reason}});
    }
    out["audit"] = Json::array();
    for (const auto& audit : run.audit) {
        out["audit"].push_back(Json{{"rule", audit.rule_index},
                                    {"action", audit.action},
                                    {"target", audit.target},
                                    {"reason", audit.reason},
                                    {"matched", audit.matched}});
    }
    return out;
}

std::string refinement_to_table(const RefinementRun& run) {
    std::ostringstream out;
    for (const auto& prop : run.propositions) {
        std::size_t retained = 0;
        for (const auto& h : prop.hypotheses) {
            if (h.status == HypothesisStatus::retained) ++retained;
        }
        out << prop.proposition << " (" << to_string(prop.kind) << "): "
            << prop.grid.cells.size() << " cells, " << retained << " retained\n";
        for (const auto& note : prop.notes) out << "  note: " << note << "\n";
        for (const auto& h : prop.hypotheses) {
            out << "  " << h.id << "  " << to_string(h.status) << "  cells {";
            for (std::size_t i = 0; i < h.cells.size(); ++i) {
                if (i > 0) out << ", ";
                out << h.cells[i];
            }
            out << "}";
            if (h.refuted) out << "  [refuted-by-evidence]";
            out << "\n";
            if (h.status == HypothesisStatus::retained) {
                out << "      " << h.statement << "\n";
            } else if (!h.rationale.empty()) {
                out << "      rationale: " << h.rationale << "\n";
            }
        }
    }
    if (!run.skipped.empty()) {
        out << "skipped (taxonomic):";
        for (std::size_t i = 0; i < run.skipped.size(); ++i) {
            out << (i == 0 ? " " : ", ") << run.skipped[i].id;
        }
        out << "\n";
    }
    return out.str();
}

bool natural_id_less(const std::string& a, const std::string& b) {
    std::size_t i = 0;
    std::size_t j = 0;
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    while (i < a.size() && j < b.size()) {
        if (is_digit(a[i]) && is_digit(b[j])) {
            std::size_t i2 = i;
            std::size_t j2 = j;
            while (i2 < a.size() && is_digit(a[i2])) ++i2;
            while (j2 < b.size() && is_digit(b[j2])) ++j2;
            // Compare as numbers: longer run of significant digits wins.
            std::string_view da(a.data() + i, i2 - i);
            std::string_view db(b.data() + j, j2 - j);
            da.remove_prefix(std::min(da.find_first_not_of('0'), da.size()));
            db.remove_prefix(std::min(db.find_first_not_of('0'), db.size()));
            if (da.size() != db.size()) return da.size() < db.size();
            if (da != db) return da < db;
            i = i2;
            j = j2;
            continue;
        }
        if (a[i] != b[j]) return a[i] < b[j];
        ++i;
        ++j;
    }
    return a.size() - i < b.size() - j;
}

}  // namespace theoryforge
