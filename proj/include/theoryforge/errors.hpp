#pragma once

#include <stdexcept>
#include <string>

namespace theoryforge {

enum class ErrorKind {
    resolution,      // a name did not resolve against the theory
    unknown_id,      // proposition/archetype/hypothesis/cell id not found
    taxonomic_skip,  // proposition is taxonomic; caller should skip it
    enumeration,     // ill-formed proposition for grid enumeration
    refinement,      // e.g. unordered right variable in a sequential proposition
    review,          // bad review rule (unknown target, unresolvable atom)
    template_error,  // statement template references an unavailable placeholder
    corpus,          // unknown bundled corpus
    graph,           // dangling reference while building the trace graph
    format,          // malformed JSON / rules file
    io,              // file system failure
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message, std::string detail = {})
        : std::runtime_error(message), kind_(kind), detail_(std::move(detail)) {}

    ErrorKind kind() const { return kind_; }
    /// The offending name/id when there is one (dangling reference, unknown id).
    const std::string& detail() const { return detail_; }

  private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace theoryforge
