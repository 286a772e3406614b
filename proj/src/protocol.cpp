#include "theoryforge/protocol.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "theoryforge/errors.hpp"
#include "theoryforge/instantiate.hpp"
#include "theoryforge/trace.hpp"

namespace theoryforge {

namespace {

std::string lowercased(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return text;
}

// Question wording: variables of the proposition's left construct read
// naturally bare; variables of other constructs are prefixed with their
// construct for context ("collaboration frequency").
std::string display_name(const std::string& variable, const std::string& construct,
                         const std::string& left_construct) {
    if (construct == left_construct) return variable;
    return lowercased(construct) + " " + variable;
}

ProtocolQuestion make_question(const Theory& theory, const std::string& construct,
                               const std::string& variable,
                               const std::string& left_construct) {
    const Construct* c = theory.find_construct(construct);
    const Variable* v = c != nullptr ? c->find_variable(variable) : nullptr;
    if (v == nullptr) {
        throw Error(ErrorKind::resolution,
                    "unresolved variable '" + construct + "." + variable + "'",
                    construct + "." + variable);
    }
    ProtocolQuestion question;
    question.variable = variable;
    question.display = display_name(variable, construct, left_construct);
    question.options = v->domain.values;
    question.prompt = "Which best describes " + question.display + "?";
    return question;
}

std::string summary_line(const TraceGraph& graph, const std::string& hypothesis_id) {
    return trace_summary(trace(graph, hypothesis_id));
}

}  // namespace

ProtocolDocument emit_protocol(const Theory& theory, const RefinementRun& run,
                               const std::optional<std::string>& archetype_name) {
    ProtocolDocument document;
    document.theory = theory.name;

    std::vector<const RefinedHypothesis*> retained = run.retained();

    if (archetype_name) {
        document.archetype = *archetype_name;
        std::vector<Diagnostic> diagnostics = check_archetype(theory, *archetype_name);
        if (has_errors(diagnostics)) {
            throw Error(ErrorKind::resolution,
                        "archetype '" + *archetype_name + "' failed its domain check",
                        *archetype_name);
        }
        const Archetype* archetype = theory.find_archetype(*archetype_name);
        std::vector<HypothesisGrid> grids;
        for (const auto& prop : run.propositions) grids.push_back(prop.grid);
        std::vector<ArchetypeSelection> selection =
            select_for_archetype(retained, *archetype, grids);
        retained.clear();
        for (const auto& s : selection) retained.push_back(s.hypothesis);
    }

    if (retained.empty()) {
        document.header_note =
            "No retained hypotheses: there is nothing to test. Refine the theory (or relax "
            "the review rules / archetype filter) and regenerate.";
        return document;
    }

    // Trace summaries come from the evidence graph over the whole run.
    std::vector<HypothesisGrid> grids;
    std::vector<RefinedHypothesis> all_records;
    for (const auto& prop : run.propositions) {
        grids.push_back(prop.grid);
        for (const auto& h : prop.hypotheses) all_records.push_back(h);
    }
    TraceGraph graph = build_graph(theory, grids, all_records);

    // Proposition order, then hypothesis id order within each proposition.
    for (const auto& prop : run.propositions) {
        const Proposition* p = theory.find_proposition(prop.proposition);
        std::vector<const RefinedHypothesis*> here;
        for (const RefinedHypothesis* h : retained) {
            if (h->proposition == prop.proposition) here.push_back(h);
        }
        std::sort(here.begin(), here.end(),
                  [](const RefinedHypothesis* a, const RefinedHypothesis* b) {
                      return natural_id_less(a->id, b->id);
                  });
        for (const RefinedHypothesis* h : here) {
            ProtocolEntry entry;
            entry.proposition = prop.proposition;
            entry.proposition_text = p != nullptr ? p->text : "";
            entry.hypothesis = h->id;
            entry.statement = h->statement;
            entry.refuted = h->refuted;
            entry.refutation_reason = h->refutation_reason;
            entry.trace = summary_line(graph, h->id);
            entry.discussion_prompt = "\"" + entry.proposition_text + "\"";

            // Measured variables: the left variable, then the right variables
            // bound by the constituent cells, in grid order, deduplicated.
            std::set<std::string> seen;
            if (!prop.grid.left_variable.empty()) {
                seen.insert(prop.grid.left_variable);
                entry.questions.push_back(make_question(theory, prop.grid.left_construct,
                                                        prop.grid.left_variable,
                                                        prop.grid.left_construct));
            }
            for (const auto& cell_id : h->cells) {
                const HypothesisCell* cell = prop.grid.find_cell(cell_id);
                if (cell == nullptr || cell->right.variable.empty()) continue;
                if (!seen.insert(cell->right.variable).second) continue;
                entry.questions.push_back(make_question(theory, prop.grid.right_construct,
                                                        cell->right.variable,
                                                        prop.grid.left_construct));
            }
            document.entries.push_back(std::move(entry));
        }
    }
    return document;
}

std::string protocol_to_markdown(const ProtocolDocument& document) {
    std::ostringstream out;
    out << "# Empirical testing protocol: " << document.theory << "\n";
    if (document.archetype) {
        out << "\nArchetype filter: " << *document.archetype << "\n";
    }
    if (!document.header_note.empty()) {
        out << "\n" << document.header_note << "\n";
        return out.str();
    }

    std::string current_proposition;
    for (const auto& entry : document.entries) {
        if (entry.proposition != current_proposition) {
            current_proposition = entry.proposition;
            out << "\n## " << entry.proposition << ": " << entry.proposition_text << "\n";
        }
        out << "\n### " << entry.hypothesis << "\n\n";
        if (entry.refuted) {
            out << "[refuted-by-evidence] " << entry.refutation_reason << "\n\n";
        }
        out << "- statement: " << entry.statement << "\n";
        out << "- trace: " << entry.trace << "\n";
        out << "- questions:\n";
        for (const auto& question : entry.questions) {
            out << "  - " << question.prompt << " (";
            for (std::size_t i = 0; i < question.options.size(); ++i) {
                if (i > 0) out << " / ";
                out << question.options[i];
            }
            out << ")\n";
        }
        out << "- discussion prompt: " << entry.discussion_prompt << "\n";
    }
    return out.str();
}

Json protocol_to_json(const ProtocolDocument& document) {
    Json out;
    out["theory"] = document.theory;
    if (document.archetype) out["archetype"] = *document.archetype;
    if (!document.header_note.empty()) out["note"] = document.header_note;
    out["entries"] = Json::array();
    for (const auto& entry : document.entries) {
        Json je;
        je["proposition"] = entry.proposition;
        je["hypothesis"] = entry.hypothesis;
        je["statement"] = entry.statement;
        if (entry.refuted) {
            je["refuted"] = true;
            je["refutation_reason"] = entry.refutation_reason;
        }
        je["questions"] = Json::array();
        for (const auto& question : entry.questions) {
            je["questions"].push_back(Json{{"variable", question.variable},
                                           {"options", question.options},
                                           {"prompt", question.prompt}});
        }
        je["trace"] = entry.trace;
        je["discussion_prompt"] = entry.discussion_prompt;
        out["entries"].push_back(std::move(je));
    }
    return out;
}

}  // namespace theoryforge
