#include "theoryforge/instantiate.hpp"

#include <algorithm>
#include <set>

#include "theoryforge/errors.hpp"

namespace theoryforge {

std::vector<Diagnostic> check_archetype(const Theory& theory, const std::string& name) {
    const Archetype* archetype = theory.find_archetype(name);
    if (archetype == nullptr) {
        throw Error(ErrorKind::unknown_id, "unknown archetype '" + name + "'", name);
    }

    std::vector<Diagnostic> diagnostics;
    if (archetype->assignments.empty()) {
        diagnostics.push_back(
            {Severity::warning, archetype->span, "archetype '" + name + "' has no assignments"});
        return diagnostics;
    }

    std::set<std::string> touched;
    std::set<std::pair<std::string, std::string>> assigned;
    for (const auto& as : archetype->assignments) {
        assigned.insert({as.construct, as.variable});
        const Construct* c = theory.find_construct(as.construct);
        if (c == nullptr) {
            diagnostics.push_back({Severity::error, as.span,
                                   "assignment references undeclared construct '" +
                                       as.construct + "'"});
            continue;
        }
        touched.insert(as.construct);
        const Variable* v = c->find_variable(as.variable);
        if (v == nullptr) {
            diagnostics.push_back({Severity::error, as.span,
                                   "assignment references undeclared variable '" +
                                       as.construct + "." + as.variable + "'"});
            continue;
        }
        if (!v->domain.contains(as.value)) {
            diagnostics.push_back(
                {Severity::error, as.span,
                 "value '" + as.value + "' is not in the domain of '" + as.construct + "." +
                     as.variable + "'"});
        }
    }

    for (const auto& construct_name : touched) {
        const Construct* c = theory.find_construct(construct_name);
        std::vector<std::string> unassigned;
        for (const auto& v : c->variables) {
            if (assigned.count({c->name, v.name}) == 0) unassigned.push_back(v.name);
        }
        if (!unassigned.empty()) {
            std::string list;
            for (std::size_t i = 0; i < unassigned.size(); ++i) {
                if (i > 0) list += ", ";
                list += unassigned[i];
            }
            diagnostics.push_back({Severity::warning, archetype->span,
                                   "archetype '" + name + "' leaves variables of '" + c->name +
                                       "' unassigned: " + list});
        }
    }
    return diagnostics;
}

namespace {

bool binding_consistent(const std::string& construct, const CellBinding& binding,
                        const Archetype& archetype) {
    if (binding.variable.empty()) return true;
    const Archetype::Assignment* assignment = archetype.find(construct, binding.variable);
    return assignment == nullptr || assignment->value == binding.value;
}

}  // namespace

bool cell_consistent(const HypothesisCell& cell, const HypothesisGrid& grid,
                     const Archetype& archetype) {
    return binding_consistent(grid.left_construct, cell.left, archetype) &&
           binding_consistent(grid.right_construct, cell.right, archetype);
}

std::vector<std::string> consistent_cells(const HypothesisGrid& grid,
                                          const Archetype& archetype) {
    std::vector<std::string> out;
    for (const auto& cell : grid.cells) {
        if (cell_consistent(cell, grid, archetype)) out.push_back(cell.id);
    }
    return out;
}

std::vector<ArchetypeSelection> select_for_archetype(
    const std::vector<const RefinedHypothesis*>& hypotheses, const Archetype& archetype,
    const std::vector<HypothesisGrid>& grids) {
    std::vector<ArchetypeSelection> out;
    for (const RefinedHypothesis* h : hypotheses) {
        if (h->status != HypothesisStatus::retained) continue;
        const HypothesisGrid* grid = nullptr;
        for (const auto& g : grids) {
            if (g.proposition == h->proposition) {
                grid = &g;
                break;
            }
        }
        if (grid == nullptr) continue;
        ArchetypeSelection selection;
        selection.hypothesis = h;
        for (const auto& cell_id : h->cells) {
            const HypothesisCell* cell = grid->find_cell(cell_id);
            if (cell != nullptr && cell_consistent(*cell, *grid, archetype)) {
                selection.matched_cells.push_back(cell_id);
            }
        }
        if (!selection.matched_cells.empty()) out.push_back(std::move(selection));
    }
    std::sort(out.begin(), out.end(), [](const ArchetypeSelection& a, const ArchetypeSelection& b) {
        return natural_id_less(a.hypothesis->id, b.hypothesis->id);
    });
    return out;
}

Json selection_to_json(const std::vector<ArchetypeSelection>& selection,
                       const std::string& archetype_name) {
    Json out;
    out["archetype"] = archetype_name;
    out["selected"] = Json::array();
    for (const auto& s : selection) {
        out["selected"].push_back(Json{{"id", s.hypothesis->id},
                                       {"proposition", s.hypothesis->proposition},
                                       {"statement", s.hypothesis->statement},
                                       {"matched_cells", s.matched_cells}});
    }
    return out;
}

}  // namespace theoryforge
