#include <doctest.h>

#include "support/random_theory.hpp"
#include "theoryforge/corpus.hpp"
#include "theoryforge/dsl.hpp"
#include "theoryforge/enumerate.hpp"
#include "theoryforge/errors.hpp"

using namespace theoryforge;

namespace {

// Independent oracle: exhaustively lists (left token, right variable, right
// token) triples with three nested loops, never touching the grid code.
std::size_t brute_force_cell_count(const Theory& theory, const Proposition& prop) {
    std::size_t count = 0;
    const Construct* lc = theory.find_construct(prop.left.construct);
    REQUIRE(lc != nullptr);
    std::vector<const Variable*> left_vars;
    if (prop.left.variable) {
        left_vars.push_back(lc->find_variable(*prop.left.variable));
    }
    const Construct* rc = theory.find_construct(prop.right.construct);
    REQUIRE(rc != nullptr);
    std::vector<const Variable*> right_vars;
    if (prop.right.variable) {
        right_vars.push_back(rc->find_variable(*prop.right.variable));
    } else {
        for (const auto& v : rc->variables) right_vars.push_back(&v);
    }
    for (const Variable* lv : left_vars) {
        for (const std::string& left_token : lv->domain.values) {
            (void)left_token;
            for (const Variable* rv : right_vars) {
                for (const std::string& right_token : rv->domain.values) {
                    (void)right_token;
                    ++count;
                }
            }
        }
    }
    return count;
}

}  // namespace

TEST_CASE("P1 grid reproduces the published 3x4 layout") {
    Theory theory = load_corpus("t3");
    HypothesisGrid grid = enumerate_grid(theory, "P1");

    CHECK(grid.proposition == "P1");
    CHECK(grid.kind == InteractionKind::categoric);
    CHECK(grid.left_construct == "Team");
    CHECK(grid.left_variable == "responsibility/ownership sharing");

    REQUIRE(grid.columns.size() == 3);
    CHECK(grid.columns[0] == "full sharing");
    CHECK(grid.columns[1] == "medium sharing");
    CHECK(grid.columns[2] == "minimal or null sharing");

    REQUIRE(grid.rows.size() == 4);
    CHECK(grid.rows[0] == GridRow{"frequency", "daily"});
    CHECK(grid.rows[1] == GridRow{"frequency", "eventual"});
    CHECK(grid.rows[2] == GridRow{"quality", "high"});
    CHECK(grid.rows[3] == GridRow{"quality", "low"});

    REQUIRE(grid.cells.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(grid.cells[i].id == "h1." + std::to_string(i + 1));
        CHECK(grid.cells[i].row == static_cast<int>(i / 3));
        CHECK(grid.cells[i].column == static_cast<int>(i % 3));
    }
    const HypothesisCell* h11 = grid.find_cell("h1.1");
    REQUIRE(h11 != nullptr);
    CHECK(h11->left == CellBinding{"responsibility/ownership sharing", "full sharing"});
    CHECK(h11->right == CellBinding{"frequency", "daily"});
    const HypothesisCell* h14 = grid.find_cell("h1.4");
    REQUIRE(h14 != nullptr);
    CHECK(h14->left.value == "full sharing");
    CHECK(h14->right == CellBinding{"frequency", "eventual"});
    const HypothesisCell* h17 = grid.find_cell("h1.7");
    REQUIRE(h17 != nullptr);
    CHECK(h17->left.value == "full sharing");
    CHECK(h17->right == CellBinding{"quality", "high"});
    const HypothesisCell* h112 = grid.find_cell("h1.12");
    REQUIRE(h112 != nullptr);
    CHECK(h112->left.value == "minimal or null sharing");
    CHECK(h112->right == CellBinding{"quality", "low"});
}

TEST_CASE("two single-value variables give exactly one cell") {
    std::string source = R"(theory "tiny" {
  construct A { variable x { only } }
  construct B { variable y { sole } }
  proposition P1 categoric relates A.x -> B.y text "t" quote "s" "e"
})";
    ParseResult result = parse_theory(source, "tiny");
    REQUIRE(result.ok());
    HypothesisGrid grid = enumerate_grid(*result.theory, "P1");
    REQUIRE(grid.cells.size() == 1);
    CHECK(grid.cells[0].id == "h1.1");
}

TEST_CASE("enumerate_all on the corpus: grids for P1 and P28 only") {
    Theory theory = load_corpus("t3");
    EnumerationRun run = enumerate_all(theory);
    REQUIRE(run.grids.size() == 2);
    CHECK(run.grids[0].proposition == "P1");
    CHECK(run.grids[1].proposition == "P28");
    CHECK(run.grids[1].cells.empty());  // taxonomy-level sides
    REQUIRE(run.skipped.size() == 2);
    CHECK(run.skipped[0].id == "P26");
    CHECK(run.skipped[0].reason == "taxonomic");
    CHECK(run.skipped[1].id == "P27");
    CHECK(run.skipped[1].reason == "taxonomic");
}

TEST_CASE("zero propositions enumerate to an empty run") {
    ParseResult result = parse_theory("theory \"none\" { construct C { variable v { a } } }");
    REQUIRE(result.ok());
    EnumerationRun run = enumerate_all(*result.theory);
    CHECK(run.grids.empty());
    CHECK(run.skipped.empty());
}

TEST_CASE("enumerate errors: unknown, taxonomic, wildcard-left") {
    Theory theory = load_corpus("t3");
    CHECK_THROWS_WITH_AS(enumerate_grid(theory, "P99"), "unknown proposition 'P99'", Error);
    try {
        enumerate_grid(theory, "P26");
        FAIL("expected taxonomic skip");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::taxonomic_skip);
    }

    std::string source = R"(theory "w" {
  construct A { variable x { a } variable y { b } }
  proposition P1 categoric relates A.* -> A.x text "t"
})";
    ParseResult parsed = parse_theory(source, "w");
    CHECK(!parsed.ok());  // validation already rejects a wildcard left here
}

TEST_CASE("grid ordering and ids are deterministic") {
    Theory first = load_corpus("t3");
    Theory second = load_corpus("t3");
    CHECK(grid_to_json(enumerate_grid(first, "P1")).dump() ==
          grid_to_json(enumerate_grid(second, "P1")).dump());
}

TEST_CASE("count law holds against the brute-force oracle") {
    std::size_t grids_checked = 0;
    for (std::uint32_t seed = 1000; seed < 1200; ++seed) {
        testing::TheoryGenerator generator(seed);
        Theory theory = generator.generate();
        for (const auto& prop : theory.propositions) {
            if (!prop.strategic) continue;
            HypothesisGrid grid = enumerate_grid(theory, prop.id);
            CHECK(grid.cells.size() == brute_force_cell_count(theory, prop));
            CHECK(grid.cells.size() == grid.columns.size() * grid.rows.size());
            ++grids_checked;

            // No cell binds a token outside its variable's domain.
            const Construct* lc = theory.find_construct(grid.left_construct);
            const Construct* rc = theory.find_construct(grid.right_construct);
            for (const auto& cell : grid.cells) {
                const Variable* lv = lc->find_variable(cell.left.variable);
                REQUIRE(lv != nullptr);
                CHECK(lv->domain.contains(cell.left.value));
                const Variable* rv = rc->find_variable(cell.right.variable);
                REQUIRE(rv != nullptr);
                CHECK(rv->domain.contains(cell.right.value));
            }
        }
    }
    CHECK(grids_checked > 100);
}

TEST_CASE("grid JSON carries proposition, columns, rows, and bindings") {
    Theory theory = load_corpus("t3");
    Json document = grid_to_json(enumerate_grid(theory, "P1"));
    CHECK(document["proposition"] == "P1");
    CHECK(document["columns"].size() == 3);
    CHECK(document["rows"].size() == 4);
    CHECK(document["cells"].size() == 12);
    CHECK(document["cells"][0]["id"] == "h1.1");
    CHECK(document["cells"][0]["left"]["value"] == "full sharing");
    CHECK(document["cells"][0]["right"]["variable"] == "frequency");
}

TEST_CASE("grid table renders the Table 3 shape") {
    Theory theory = load_corpus("t3");
    std::string table = grid_to_table(enumerate_grid(theory, "P1"));
    CHECK(table.find("full sharing") != std::string::npos);
    CHECK(table.find("minimal or null sharing") != std::string::npos);
    CHECK(table.find("h1.1") != std::string::npos);
    CHECK(table.find("h1.12") != std::string::npos);
    CHECK(table.find("frequency : daily") != std::string::npos);
    // Row-major: h1.1 appears before h1.4, which appears before h1.12.
    CHECK(table.find("h1.1") < table.find("h1.4"));
    CHECK(table.find("h1.4") < table.find("h1.12"));
}
