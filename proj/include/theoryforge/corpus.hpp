#pragma once

#include <string>
#include <vector>

#include "theoryforge/metamodel.hpp"
#include "theoryforge/rules.hpp"

namespace theoryforge {

/// Names of the bundled corpora ("t3").
std::vector<std::string> corpus_names();

/// Raw embedded text of a bundled corpus. Throws Error(corpus) for an
/// unknown name.
const char* corpus_theory_text(const std::string& name);
const char* corpus_rules_text(const std::string& name);

/// Parses the embedded corpus into a validation-clean theory.
Theory load_corpus(const std::string& name);

/// Parses the embedded example review rules of a corpus.
std::vector<ReviewRule> load_corpus_rules(const std::string& name);

}  // namespace theoryforge
