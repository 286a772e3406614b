#include <doctest.h>

#include "theoryforge/corpus.hpp"
#include "theoryforge/dsl.hpp"
#include "theoryforge/protocol.hpp"

using namespace theoryforge;

namespace {

ProtocolDocument corpus_protocol(const std::optional<std::string>& archetype = std::nullopt,
                                 bool with_rules = false) {
    Theory theory = load_corpus("t3");
    std::vector<ReviewRule> rules;
    if (with_rules) rules = load_corpus_rules("t3");
    RefinementRun run = refine_theory(theory, rules);
    return emit_protocol(theory, run, archetype);
}

}  // namespace

TEST_CASE("H1.1 gets both the responsibility-sharing and frequency scales") {
    ProtocolDocument document = corpus_protocol();
    REQUIRE(!document.entries.empty());
    const ProtocolEntry& entry = document.entries.front();
    CHECK(entry.hypothesis == "H1.1");
    CHECK(entry.proposition == "P1");
    REQUIRE(entry.questions.size() == 2);

    const ProtocolQuestion& sharing = entry.questions[0];
    CHECK(sharing.variable == "responsibility/ownership sharing");
    CHECK(sharing.prompt == "Which best describes responsibility/ownership sharing?");
    CHECK(sharing.options == std::vector<std::string>{"full sharing", "medium sharing",
                                                      "minimal or null sharing"});

    const ProtocolQuestion& frequency = entry.questions[1];
    CHECK(frequency.variable == "frequency");
    CHECK(frequency.prompt == "Which best describes collaboration frequency?");
    CHECK(frequency.options == std::vector<std::string>{"daily", "eventual"});
}

TEST_CASE("every question's option list equals the variable's domain exactly") {
    Theory theory = load_corpus("t3");
    ProtocolDocument document = corpus_protocol();
    for (const auto& entry : document.entries) {
        for (const auto& question : entry.questions) {
            bool found = false;
            for (const auto& c : theory.constructs) {
                const Variable* v = c.find_variable(question.variable);
                if (v != nullptr) {
                    CHECK(question.options == v->domain.values);
                    found = true;
                }
            }
            CHECK_MESSAGE(found, "question names unknown variable ", question.variable);
        }
        // Every entry carries its hypothesis id and a trace back-link.
        CHECK(!entry.hypothesis.empty());
        CHECK(entry.trace.find(entry.hypothesis) == 0);
        CHECK(entry.trace.find("P1") != std::string::npos);
    }
}

TEST_CASE("entries group by proposition in declaration order, ids naturally ordered") {
    ProtocolDocument document = corpus_protocol();
    REQUIRE(document.entries.size() == 4);
    CHECK(document.entries[0].hypothesis == "H1.1");
    CHECK(document.entries[1].hypothesis == "H1.2");
    CHECK(document.entries[2].hypothesis == "H1.3");
    CHECK(document.entries[3].hypothesis == "H1.4");
}

TEST_CASE("an empty retained set yields a header-only document") {
    ParseResult result = parse_theory("theory \"bare\" { }");
    REQUIRE(result.ok());
    RefinementRun run = refine_theory(*result.theory);
    ProtocolDocument document = emit_protocol(*result.theory, run);
    CHECK(document.entries.empty());
    CHECK(!document.header_note.empty());
    std::string markdown = protocol_to_markdown(document);
    CHECK(markdown.find("# Empirical testing protocol") == 0);
    CHECK(markdown.find("nothing to test") != std::string::npos);
}

TEST_CASE("archetype filtering keeps only consistent hypotheses") {
    ProtocolDocument document = corpus_protocol(std::string("Enabler Platform Team"));
    REQUIRE(document.entries.size() == 2);
    CHECK(document.entries[0].hypothesis == "H1.1");
    CHECK(document.entries[1].hypothesis == "H1.3");
    CHECK(document.archetype == "Enabler Platform Team");
    std::string markdown = protocol_to_markdown(document);
    CHECK(markdown.find("Archetype filter: Enabler Platform Team") != std::string::npos);
}

TEST_CASE("refuted hypotheses are flagged") {
    Theory theory = load_corpus("t3");
    RulesParseResult rules = parse_rules(R"(refute H1.1 reason "contradicted in E4")");
    REQUIRE(rules.ok());
    RefinementRun run = refine_theory(theory, rules.rules);
    ProtocolDocument document = emit_protocol(theory, run);
    REQUIRE(!document.entries.empty());
    CHECK(document.entries.front().refuted);
    std::string markdown = protocol_to_markdown(document);
    CHECK(markdown.find("[refuted-by-evidence] contradicted in E4") != std::string::npos);
}

TEST_CASE("markdown regeneration is deterministic and LF-terminated") {
    std::string first = protocol_to_markdown(corpus_protocol(std::nullopt, true));
    std::string second = protocol_to_markdown(corpus_protocol(std::nullopt, true));
    CHECK(first == second);
    CHECK(first.find('\r') == std::string::npos);
    CHECK(first.back() == '\n');
    // Discussion prompt quotes the proposition text for interview use.
    CHECK(first.find("- discussion prompt: \"A team culture based on responsibility/ownership "
                     "sharing enables collaboration.\"") != std::string::npos);
}

TEST_CASE("protocol JSON carries the stable keys") {
    ProtocolDocument document = corpus_protocol();
    Json out = protocol_to_json(document);
    REQUIRE(out.contains("entries"));
    const Json& entry = out["entries"][0];
    CHECK(entry.contains("proposition"));
    CHECK(entry.contains("hypothesis"));
    CHECK(entry.contains("statement"));
    CHECK(entry.contains("questions"));
    CHECK(entry.contains("trace"));
    const Json& question = entry["questions"][0];
    CHECK(question.contains("variable"));
    CHECK(question.contains("options"));
    CHECK(question.contains("prompt"));
}
