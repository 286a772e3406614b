// theoryforge: operationalizes declarative theory specifications into
// hypothesis grids, refined hypothesis sets, traceability graphs, and
// empirical testing protocols.

#include <CLI11.hpp>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>

#include "theoryforge/corpus.hpp"
#include "theoryforge/dsl.hpp"
#include "theoryforge/enumerate.hpp"
#include "theoryforge/errors.hpp"
#include "theoryforge/instantiate.hpp"
#include "theoryforge/json_io.hpp"
#include "theoryforge/protocol.hpp"
#include "theoryforge/refine.hpp"
#include "theoryforge/rules.hpp"
#include "theoryforge/trace.hpp"

namespace tf = theoryforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPipeline = 1;
constexpr int kExitUsage = 2;

bool use_color() {
    static const bool enabled = [] {
        if (std::getenv("THEORYFORGE_NO_COLOR") != nullptr) return false;
        return isatty(fileno(stderr)) != 0;
    }();
    return enabled;
}

void print_diagnostic(const tf::Diagnostic& diagnostic) {
    const bool error = diagnostic.severity == tf::Severity::error;
    if (use_color()) {
        std::cerr << (error ? "\033[31merror\033[0m" : "\033[33mwarning\033[0m");
    } else {
        std::cerr << (error ? "error" : "warning");
    }
    std::cerr << ": " << tf::to_string(diagnostic.location) << ": " << diagnostic.message
              << "\n";
}

void print_diagnostics(const std::vector<tf::Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) print_diagnostic(d);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw tf::Error(tf::ErrorKind::io, "cannot open file '" + path + "'", path);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

bool looks_like_json(const std::string& path, const std::string& text) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return true;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
        return c == '{';
    }
    return false;
}

struct TheoryInput {
    std::string file;    // empty means: use --corpus
    std::string corpus;  // bundled corpus name
};

// `--format json` is accepted anywhere a .theory file is: input files are
// auto-detected as DSL or metamodel JSON.
std::optional<tf::Theory> load_theory(const TheoryInput& input) {
    if (!input.corpus.empty()) {
        return tf::load_corpus(input.corpus);
    }
    std::string text = read_file(input.file);
    if (looks_like_json(input.file, text)) {
        tf::Theory theory = tf::theory_from_json_text(text, input.file);
        std::vector<tf::Diagnostic> diagnostics = tf::validate(theory);
        print_diagnostics(diagnostics);
        if (tf::has_errors(diagnostics)) return std::nullopt;
        return theory;
    }
    tf::ParseResult result = tf::parse_theory(text, input.file);
    print_diagnostics(result.diagnostics);
    if (!result.ok()) return std::nullopt;
    return std::move(*result.theory);
}

std::vector<tf::ReviewRule> load_rules(const std::string& path) {
    tf::RulesParseResult result = tf::parse_rules(read_file(path), path);
    if (!result.ok()) {
        print_diagnostics(result.diagnostics);
        throw tf::Error(tf::ErrorKind::format, "rules file '" + path + "' failed to parse");
    }
    return std::move(result.rules);
}

void maybe_stamp(std::ostream& out, bool stamp) {
    if (!stamp) return;
    std::time_t now = std::time(nullptr);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# generated: " << buffer << "\n";
}

int run_validate(const TheoryInput& input) {
    if (!input.corpus.empty()) {
        // The bundled corpus still goes through the full validator so its
        // warnings are visible.
        tf::Theory theory = tf::load_corpus(input.corpus);
        std::vector<tf::Diagnostic> diagnostics = tf::validate(theory);
        print_diagnostics(diagnostics);
        std::cout << "ok: 0 errors, " << diagnostics.size() << " warnings\n";
        return kExitOk;
    }
    std::string text = read_file(input.file);
    std::vector<tf::Diagnostic> diagnostics;
    if (looks_like_json(input.file, text)) {
        try {
            tf::Theory theory = tf::theory_from_json_text(text, input.file);
            diagnostics = tf::validate(theory);
        } catch (const tf::Error& e) {
            diagnostics.push_back({tf::Severity::error, {input.file, 1, 1}, e.what()});
        }
    } else {
        diagnostics = tf::parse_theory(text, input.file).diagnostics;
    }
    print_diagnostics(diagnostics);
    std::size_t errors = tf::count_errors(diagnostics);
    if (errors > 0) {
        std::cout << "failed: " << errors << " errors, " << diagnostics.size() - errors
                  << " warnings\n";
        return kExitPipeline;
    }
    std::cout << "ok: 0 errors, " << diagnostics.size() << " warnings\n";
    return kExitOk;
}

int run_stats(const tf::Theory& theory, bool refined, const std::string& rules_path,
              const std::string& archetype) {
    std::size_t with_variables = 0;
    std::size_t taxonomy_only = 0;
    std::size_t variables = 0;
    std::size_t indicator_values = 0;
    for (const auto& c : theory.constructs) {
        if (c.variables.empty()) {
            ++taxonomy_only;
        } else {
            ++with_variables;
        }
        variables += c.variables.size();
        for (const auto& v : c.variables) indicator_values += v.domain.values.size();
    }
    std::size_t strategic = 0;
    for (const auto& p : theory.propositions) {
        if (p.strategic) ++strategic;
    }
    std::cout << "constructs: " << with_variables << ", variables: " << variables
              << ", indicator values: " << indicator_values
              << ", propositions: " << theory.propositions.size() << " (strategic "
              << strategic << ", taxonomic " << theory.propositions.size() - strategic << ")";
    if (taxonomy_only > 0) {
        std::cout << ", taxonomy-only constructs: " << taxonomy_only;
    }
    std::cout << "\n";

    if (!refined && archetype.empty()) return kExitOk;

    std::vector<tf::ReviewRule> rules;
    if (!rules_path.empty()) rules = load_rules(rules_path);
    tf::RefinementRun run = tf::refine_theory(theory, rules);
    std::size_t cells = 0;
    std::size_t by_status[5] = {0, 0, 0, 0, 0};
    for (const auto& prop : run.propositions) {
        cells += prop.grid.cells.size();
        for (const auto& h : prop.hypotheses) {
            switch (h.status) {
                case tf::HypothesisStatus::retained: ++by_status[0]; break;
                case tf::HypothesisStatus::pruned_absence: ++by_status[1]; break;
                case tf::HypothesisStatus::pruned_abductive: ++by_status[2]; break;
                case tf::HypothesisStatus::merged_away: ++by_status[3]; break;
                case tf::HypothesisStatus::decomposed_away: ++by_status[4]; break;
                case tf::HypothesisStatus::candidate: break;
            }
        }
    }
    std::cout << "cells: " << cells << ", retained: " << by_status[0]
              << ", pruned_absence: " << by_status[1] << ", pruned_abductive: " << by_status[2]
              << ", merged_away: " << by_status[3] << ", decomposed_away: " << by_status[4]
              << "\n";

    if (!archetype.empty()) {
        const tf::Archetype* a = theory.find_archetype(archetype);
        if (a == nullptr) {
            throw tf::Error(tf::ErrorKind::unknown_id, "unknown archetype '" + archetype + "'",
                            archetype);
        }
        std::vector<tf::HypothesisGrid> grids;
        for (const auto& prop : run.propositions) grids.push_back(prop.grid);
        auto selection = tf::select_for_archetype(run.retained(), *a, grids);
        std::cout << "selected for " << archetype << ": " << selection.size() << "\n";
    }
    return kExitOk;
}

int run_enumerate(const tf::Theory& theory, const std::string& proposition,
                  const std::string& format, bool stamp) {
    maybe_stamp(std::cout, stamp);
    if (!proposition.empty()) {
        tf::HypothesisGrid grid = tf::enumerate_grid(theory, proposition);
        if (format == "json") {
            std::cout << tf::grid_to_json(grid).dump(2) << "\n";
        } else {
            std::cout << tf::grid_to_table(grid);
        }
        return kExitOk;
    }
    tf::EnumerationRun run = tf::enumerate_all(theory);
    if (format == "json") {
        tf::Json out;
        out["grids"] = tf::Json::array();
        for (const auto& grid : run.grids) out["grids"].push_back(tf::grid_to_json(grid));
        out["skipped"] = tf::Json::array();
        for (const auto& skip : run.skipped) {
            out["skipped"].push_back(tf::Json{{"id", skip.id}, {"reason", skip.reason}});
        }
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    for (std::size_t i = 0; i < run.grids.size(); ++i) {
        if (i > 0) std::cout << "\n";
        std::cout << tf::grid_to_table(run.grids[i]);
    }
    if (!run.skipped.empty()) {
        std::cout << "skipped (taxonomic):";
        for (std::size_t i = 0; i < run.skipped.size(); ++i) {
            std::cout << (i == 0 ? " " : ", ") << run.skipped[i].id;
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int run_refine(const tf::Theory& theory, const std::string& rules_path,
               const std::string& format, bool stamp) {
    std::vector<tf::ReviewRule> rules;
    if (!rules_path.empty()) rules = load_rules(rules_path);
    tf::RefinementRun run = tf::refine_theory(theory, rules);
    maybe_stamp(std::cout, stamp);
    if (format == "table") {
        std::cout << tf::refinement_to_table(run);
    } else {
        std::cout << tf::refinement_to_json(run).dump(2) << "\n";
    }
    return kExitOk;
}

int run_instantiate(const tf::Theory& theory, const std::string& archetype,
                    const std::string& rules_path, const std::string& format, bool stamp) {
    std::vector<tf::Diagnostic> diagnostics = tf::check_archetype(theory, archetype);
    print_diagnostics(diagnostics);
    if (tf::has_errors(diagnostics)) return kExitPipeline;

    std::vector<tf::ReviewRule> rules;
    if (!rules_path.empty()) rules = load_rules(rules_path);
    tf::RefinementRun run = tf::refine_theory(theory, rules);
    std::vector<tf::HypothesisGrid> grids;
    for (const auto& prop : run.propositions) grids.push_back(prop.grid);
    const tf::Archetype* a = theory.find_archetype(archetype);
    auto selection = tf::select_for_archetype(run.retained(), *a, grids);

    maybe_stamp(std::cout, stamp);
    if (format == "table") {
        std::cout << "archetype: " << archetype << "\n";
        for (const auto& s : selection) {
            std::cout << "  " << s.hypothesis->id << "  matched {";
            for (std::size_t i = 0; i < s.matched_cells.size(); ++i) {
                if (i > 0) std::cout << ", ";
                std::cout << s.matched_cells[i];
            }
            std::cout << "}\n      " << s.hypothesis->statement << "\n";
        }
        std::cout << "selected: " << selection.size() << "\n";
    } else {
        std::cout << tf::selection_to_json(selection, archetype).dump(2) << "\n";
    }
    return kExitOk;
}

int run_trace(const tf::Theory& theory, const std::string& hypothesis,
              const std::string& rules_path, const std::string& format, bool stamp) {
    std::vector<tf::ReviewRule> rules;
    if (!rules_path.empty()) rules = load_rules(rules_path);
    tf::RefinementRun run = tf::refine_theory(theory, rules);
    std::vector<tf::HypothesisGrid> grids;
    std::vector<tf::RefinedHypothesis> records;
    for (const auto& prop : run.propositions) {
        grids.push_back(prop.grid);
        for (const auto& h : prop.hypotheses) records.push_back(h);
    }
    tf::TraceGraph graph = tf::build_graph(theory, grids, records);
    tf::TraceResult result = tf::trace(graph, hypothesis);
    maybe_stamp(std::cout, stamp);
    if (format == "json") {
        std::cout << tf::trace_to_json(result).dump(2) << "\n";
    } else {
        std::cout << tf::trace_to_dot(graph, result);
    }
    return kExitOk;
}

int run_protocol(const tf::Theory& theory, const std::string& rules_path,
                 const std::string& archetype, const std::string& out_path,
                 const std::string& format, bool stamp) {
    std::vector<tf::ReviewRule> rules;
    if (!rules_path.empty()) rules = load_rules(rules_path);
    tf::RefinementRun run = tf::refine_theory(theory, rules);
    std::optional<std::string> selection;
    if (!archetype.empty()) selection = archetype;
    tf::ProtocolDocument document = tf::emit_protocol(theory, run, selection);

    std::string rendered;
    if (format == "json") {
        rendered = tf::protocol_to_json(document).dump(2) + "\n";
    } else {
        rendered = tf::protocol_to_markdown(document);
    }
    if (out_path.empty()) {
        maybe_stamp(std::cout, stamp);
        std::cout << rendered;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw tf::Error(tf::ErrorKind::io, "cannot write file '" + out_path + "'", out_path);
    }
    maybe_stamp(out, stamp);
    out << rendered;
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"theoryforge: operationalize theories into testable hypothesis sets"};
    app.require_subcommand(1);

    // Shared per-subcommand option state.
    struct Options {
        std::string file;
        std::string corpus;
        std::string rules;
        std::string format;
        std::string proposition;
        std::string archetype;
        std::string hypothesis;
        std::string out;
        bool refined = false;
        bool stamp = false;
    };
    Options opt;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("file", opt.file, "theory file (.theory DSL or .json)");
        cmd->add_option("--corpus", opt.corpus, "bundled corpus name (t3)");
        cmd->add_flag("--stamp", opt.stamp, "include a generation timestamp");
    };

    CLI::App* validate = app.add_subcommand("validate", "check a theory against its invariants");
    add_input(validate);

    CLI::App* stats = app.add_subcommand("stats", "count theory and refinement elements");
    add_input(stats);
    stats->add_flag("--refined", opt.refined, "also run the refinement pipeline and count statuses");
    stats->add_option("--rules", opt.rules, "review rules file");
    stats->add_option("--archetype", opt.archetype,
                      "also count the archetype-selected subset (implies --refined)");

    CLI::App* enumerate = app.add_subcommand("enumerate", "generate hypothesis grids");
    add_input(enumerate);
    enumerate->add_option("--proposition", opt.proposition, "enumerate one proposition");
    enumerate->add_option("--format", opt.format, "table|json")
        ->check(CLI::IsMember({"table", "json"}));

    CLI::App* refine = app.add_subcommand("refine", "run the full refinement pipeline");
    add_input(refine);
    refine->add_option("--rules", opt.rules, "review rules file");
    refine->add_option("--format", opt.format, "json|table")
        ->check(CLI::IsMember({"table", "json"}));

    CLI::App* instantiate =
        app.add_subcommand("instantiate", "select archetype-consistent hypotheses");
    add_input(instantiate);
    instantiate->add_option("--archetype", opt.archetype, "archetype name")->required();
    instantiate->add_option("--rules", opt.rules, "review rules file");
    instantiate->add_option("--format", opt.format, "json|table")
        ->check(CLI::IsMember({"table", "json"}));

    CLI::App* trace = app.add_subcommand("trace", "print the chain of evidence for a hypothesis");
    add_input(trace);
    trace->add_option("--hypothesis", opt.hypothesis, "hypothesis id (e.g. H1.1)")->required();
    trace->add_option("--rules", opt.rules, "review rules file");
    trace->add_option("--format", opt.format, "dot|json")
        ->check(CLI::IsMember({"dot", "json"}));

    CLI::App* protocol = app.add_subcommand("protocol", "emit the empirical testing protocol");
    add_input(protocol);
    protocol->add_option("--rules", opt.rules, "review rules file");
    protocol->add_option("--archetype", opt.archetype, "restrict to one archetype");
    protocol->add_option("--out", opt.out, "write to a file instead of stdout");
    protocol->add_option("--format", opt.format, "md|json")
        ->check(CLI::IsMember({"md", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            std::cout << app.help();
            return kExitOk;
        }
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    TheoryInput input{opt.file, opt.corpus};
    if (input.file.empty() == input.corpus.empty()) {
        std::cerr << "error: provide exactly one of <file> or --corpus\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(validate)) {
            return run_validate(input);
        }
        std::optional<tf::Theory> theory = load_theory(input);
        if (!theory) return kExitPipeline;
        if (app.got_subcommand(stats)) {
            return run_stats(*theory, opt.refined, opt.rules, opt.archetype);
        }
        if (app.got_subcommand(enumerate)) {
            std::string format = opt.format.empty() ? "table" : opt.format;
            return run_enumerate(*theory, opt.proposition, format, opt.stamp);
        }
        if (app.got_subcommand(refine)) {
            std::string format = opt.format.empty() ? "json" : opt.format;
            return run_refine(*theory, opt.rules, format, opt.stamp);
        }
        if (app.got_subcommand(instantiate)) {
            std::string format = opt.format.empty() ? "json" : opt.format;
            return run_instantiate(*theory, opt.archetype, opt.rules, format, opt.stamp);
        }
        if (app.got_subcommand(trace)) {
            std::string format = opt.format.empty() ? "dot" : opt.format;
            return run_trace(*theory, opt.hypothesis, opt.rules, format, opt.stamp);
        }
        if (app.got_subcommand(protocol)) {
            std::string format = opt.format.empty() ? "md" : opt.format;
            return run_protocol(*theory, opt.rules, opt.archetype, opt.out, format, opt.stamp);
        }
    } catch (const tf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPipeline;
    }
    return kExitOk;
}
