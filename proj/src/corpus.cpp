#include "theoryforge/corpus.hpp"

#include "theoryforge/dsl.hpp"
#include "theoryforge/errors.hpp"

namespace theoryforge {

namespace detail {
// Defined in the generated corpus_data.cpp.
const char* t3_theory_text();
const char* t3_rules_text();
}  // namespace detail

std::vector<std::string> corpus_names() { return {"t3"}; }

const char* corpus_theory_text(const std::string& name) {
    if (name == "t3") return detail::t3_theory_text();
    throw Error(ErrorKind::corpus, "unknown corpus '" + name + "'", name);
}

const char* corpus_rules_text(const std::string& name) {
    if (name == "t3") return detail::t3_rules_text();
    throw Error(ErrorKind::corpus, "unknown corpus '" + name + "'", name);
}

Theory load_corpus(const std::string& name) {
    ParseResult result = parse_theory(corpus_theory_text(name), "corpus/" + name + ".theory");
    if (!result.ok()) {
        std::string detail;
        for (const auto& d : result.diagnostics) detail += to_string(d) + "\n";
        throw Error(ErrorKind::corpus, "bundled corpus '" + name + "' failed to parse:\n" + detail);
    }
    return std::move(*result.theory);
}

std::vector<ReviewRule> load_corpus_rules(const std::string& name) {
    RulesParseResult result =
        parse_rules(corpus_rules_text(name), "corpus/" + name + ".rules");
    if (!result.ok()) {
        std::string detail;
        for (const auto& d : result.diagnostics) detail += to_string(d) + "\n";
        throw Error(ErrorKind::corpus,
                    "bundled rules '" + name + "' failed to parse:\n" + detail);
    }
    return std::move(result.rules);
}

}  // namespace theoryforge
