#pragma once

#include <string>
#include <vector>

#include "theoryforge/metamodel.hpp"
#include "theoryforge/refine.hpp"

namespace theoryforge {

/// Checks one archetype against the theory: errors for out-of-domain
/// assignments, warnings listing unassigned variables of the constructs the
/// archetype touches. Throws Error(unknown_id) for an unknown archetype name.
std::vector<Diagnostic> check_archetype(const Theory& theory, const std::string& name);

/// A cell is consistent with an archetype iff every bound (variable, token)
/// either matches the archetype's assignment or the variable is unassigned
/// (open-world partial assignment).
bool cell_consistent(const HypothesisCell& cell, const HypothesisGrid& grid,
                     const Archetype& archetype);

/// The ids of all archetype-consistent cells of a grid, in grid order.
std::vector<std::string> consistent_cells(const HypothesisGrid& grid,
                                          const Archetype& archetype);

struct ArchetypeSelection {
    const RefinedHypothesis* hypothesis = nullptr;
    std::vector<std::string> matched_cells;  // the consistent constituents
};

/// Selects the retained hypotheses with at least one archetype-consistent
/// constituent cell. Set semantics: output sorted by id (natural order),
/// independent of input order.
std::vector<ArchetypeSelection> select_for_archetype(
    const std::vector<const RefinedHypothesis*>& hypotheses, const Archetype& archetype,
    const std::vector<HypothesisGrid>& grids);

Json selection_to_json(const std::vector<ArchetypeSelection>& selection,
                       const std::string& archetype_name);

}  // namespace theoryforge
