#include "theoryforge/enumerate.hpp"

#include <algorithm>
#include <sstream>

#include "theoryforge/errors.hpp"

namespace theoryforge {

const HypothesisCell* HypothesisGrid::find_cell(const std::string& cell_id) const {
    for (const auto& cell : cells) {
        if (cell.id == cell_id) return &cell;
    }
    return nullptr;
}

HypothesisGrid enumerate_grid(const Theory& theory, const std::string& proposition_id) {
    const Proposition* prop = theory.find_proposition(proposition_id);
    if (prop == nullptr) {
        throw Error(ErrorKind::unknown_id, "unknown proposition '" + proposition_id + "'",
                    proposition_id);
    }
    if (!prop->strategic) {
        throw Error(ErrorKind::taxonomic_skip,
                    "proposition '" + proposition_id + "' is taxonomic; no grid is enumerated",
                    proposition_id);
    }

    std::vector<ResolvedVariable> left = resolve(theory, prop->left);
    std::vector<ResolvedVariable> right = resolve(theory, prop->right);
    if (prop->left.is_wildcard() && !left.empty()) {
        throw Error(ErrorKind::enumeration,
                    "proposition '" + proposition_id +
                        "': left side is a wildcard over " + std::to_string(left.size()) +
                        " variables; write one proposition per left variable",
                    proposition_id);
    }

    HypothesisGrid grid;
    grid.proposition = prop->id;
    grid.ordinal = *theory.proposition_ordinal(prop->id);
    grid.kind = prop->kind;
    grid.left_construct = prop->left.construct;
    grid.right_construct = prop->right.construct;

    if (!left.empty()) {
        grid.left_variable = left.front().variable->name;
        grid.columns = left.front().variable->domain.values;
    }
    for (const auto& rv : right) {
        for (const auto& value : rv.variable->domain.values) {
            grid.rows.push_back({rv.variable->name, value});
        }
    }

    const int columns = static_cast<int>(grid.columns.size());
    for (int row = 0; row < static_cast<int>(grid.rows.size()); ++row) {
        for (int column = 0; column < columns; ++column) {
            HypothesisCell cell;
            cell.proposition = prop->id;
            cell.row = row;
            cell.column = column;
            cell.id = "h" + std::to_string(grid.ordinal) + "." +
                      std::to_string(row * columns + column + 1);
            cell.left = {grid.left_variable, grid.columns[column]};
            cell.right = {grid.rows[row].variable, grid.rows[row].value};
            grid.cells.push_back(std::move(cell));
        }
    }
    return grid;
}

EnumerationRun enumerate_all(const Theory& theory) {
    EnumerationRun run;
    for (const auto& prop : theory.propositions) {
        if (!prop.strategic) {
            run.skipped.push_back({prop.id, "taxonomic"});
            continue;
        }
        run.grids.push_back(enumerate_grid(theory, prop.id));
    }
    return run;
}

Json grid_to_json(const HypothesisGrid& grid) {
    Json out;
    out["proposition"] = grid.proposition;
    out["kind"] = to_string(grid.kind);
    Json left;
    left["construct"] = grid.left_construct;
    if (!grid.left_variable.empty()) left["variable"] = grid.left_variable;
    out["left"] = std::move(left);
    out["right"] = Json{{"construct", grid.right_construct}};
    out["columns"] = grid.columns;
    out["rows"] = Json::array();
    for (const auto& row : grid.rows) {
        out["rows"].push_back(Json{{"variable", row.variable}, {"value", row.value}});
    }
    out["cells"] = Json::array();
    for (const auto& cell : grid.cells) {
        Json jc;
        jc["id"] = cell.id;
        jc["row"] = cell.row;
        jc["column"] = cell.column;
        jc["left"] = Json{{"variable", cell.left.variable}, {"value", cell.left.value}};
        jc["right"] = Json{{"variable", cell.right.variable}, {"value", cell.right.value}};
        out["cells"].push_back(std::move(jc));
    }
    return out;
}

std::string grid_to_table(const HypothesisGrid& grid) {
    std::ostringstream out;
    out << grid.proposition << " (" << to_string(grid.kind) << ")";
    if (grid.left_variable.empty()) {
        out << "  [taxonomy-level proposition: no measurable variables, 0 cells]\n";
        return out.str();
    }
    out << "  left: " << grid.left_construct << "." << grid.left_variable << "\n";

    // Row headers: "<right construct>.<variable> : <value>".
    std::vector<std::string> headers;
    std::size_t header_width = 0;
    for (const auto& row : grid.rows) {
        headers.push_back(grid.right_construct + "." + row.variable + " : " + row.value);
        header_width = std::max(header_width, headers.back().size());
    }
    std::vector<std::size_t> widths;
    for (std::size_t c = 0; c < grid.columns.size(); ++c) {
        std::size_t w = grid.columns[c].size();
        for (const auto& cell : grid.cells) {
            if (static_cast<std::size_t>(cell.column) == c) {
                w = std::max(w, cell.id.size());
            }
        }
        widths.push_back(w);
    }

    auto pad = [&out](const std::string& text, std::size_t width) {
        out << text;
        for (std::size_t i = text.size(); i < width; ++i) out << ' ';
    };

    pad("", header_width);
    for (std::size_t c = 0; c < grid.columns.size(); ++c) {
        out << " | ";
        pad(grid.columns[c], widths[c]);
    }
    out << '\n';
    pad(std::string(header_width, '-'), header_width);
    for (std::size_t c = 0; c < grid.columns.size(); ++c) {
        out << "-+-" << std::string(widths[c], '-');
    }
    out << '\n';
    for (std::size_t r = 0; r < grid.rows.size(); ++r) {
        pad(headers[r], header_width);
        for (std::size_t c = 0; c < grid.columns.size(); ++c) {
            out << " | ";
            pad(grid.cells[r * grid.columns.size() + c].id, widths[c]);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace theoryforge
