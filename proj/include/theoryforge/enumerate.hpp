#pragma once

#include <string>
#include <vector>

#include "theoryforge/json_io.hpp"
#include "theoryforge/metamodel.hpp"

namespace theoryforge {

struct CellBinding {
    std::string variable;
    std::string value;

    bool operator==(const CellBinding&) const = default;
};

/// One cell of the hypothesis grid: a pairing of concrete indicator values.
struct HypothesisCell {
    std::string id;  // "h<propOrdinal>.<k>", k = row * columns + column + 1
    std::string proposition;
    CellBinding left;
    CellBinding right;
    int row = 0;
    int column = 0;

    bool operator==(const HypothesisCell&) const = default;
};

struct GridRow {
    std::string variable;
    std::string value;

    bool operator==(const GridRow&) const = default;
};

/// The full grid for one proposition: columns are the left variable's
/// indicators in declaration order; rows are the flattened (right variable,
/// indicator) pairs, right variables in resolution order; cells row-major.
struct HypothesisGrid {
    std::string proposition;
    int ordinal = 0;  // 1-based declaration position of the proposition
    InteractionKind kind = InteractionKind::categoric;
    std::string left_construct;
    std::string left_variable;  // empty for taxonomy-level (zero-variable) sides
    std::string right_construct;
    std::vector<std::string> columns;
    std::vector<GridRow> rows;
    std::vector<HypothesisCell> cells;

    const HypothesisCell* find_cell(const std::string& cell_id) const;
};

/// Builds the grid for one strategic proposition. Throws:
///   - Error(unknown_id) for an unknown proposition id,
///   - Error(taxonomic_skip) for a taxonomic proposition,
///   - Error(enumeration) for a wildcard left side over a construct that has
///     variables (one proposition per left variable is required).
/// A wildcard over a taxonomy-only construct yields an empty grid.
HypothesisGrid enumerate_grid(const Theory& theory, const std::string& proposition_id);

struct SkippedProposition {
    std::string id;
    std::string reason;
};

struct EnumerationRun {
    std::vector<HypothesisGrid> grids;           // strategic, declaration order
    std::vector<SkippedProposition> skipped;     // taxonomic, declaration order
};

EnumerationRun enumerate_all(const Theory& theory);

Json grid_to_json(const HypothesisGrid& grid);

/// Text rendering with the left indicators across and the flattened right
/// (variable, indicator) pairs down, one cell id per intersection.
std::string grid_to_table(const HypothesisGrid& grid);

}  // namespace theoryforge
