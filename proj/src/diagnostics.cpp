#include "theoryforge/diagnostics.hpp"

#include <algorithm>
#include <sstream>

namespace theoryforge {

std::string to_string(const SourceSpan& span) {
    std::ostringstream out;
    out << span.file << ":" << span.line << ":" << span.column;
    return out.str();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::size_t count_errors(const std::vector<Diagnostic>& diagnostics) {
    return static_cast<std::size_t>(
        std::count_if(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) { return d.severity == Severity::error; }));
}

std::string to_string(const Diagnostic& diagnostic) {
    std::ostringstream out;
    out << (diagnostic.severity == Severity::error ? "error" : "warning") << ": "
        << to_string(diagnostic.location) << ": " << diagnostic.message;
    return out.str();
}

}  // namespace theoryforge
