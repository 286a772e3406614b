#pragma once

#include <string>
#include <vector>

namespace theoryforge {

/// A 1-based position inside a source file. Attached to every parsed
/// construct, variable, proposition, archetype, and diagnostic.
struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;

    bool operator==(const SourceSpan&) const = default;
};

std::string to_string(const SourceSpan& span);

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    SourceSpan location;
    std::string message;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);
std::size_t count_errors(const std::vector<Diagnostic>& diagnostics);
std::string to_string(const Diagnostic& diagnostic);

}  // namespace theoryforge
