#include "theoryforge/metamodel.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "theoryforge/errors.hpp"

namespace theoryforge {

bool IndicatorDomain::contains(const std::string& token) const {
    return std::find(values.begin(), values.end(), token) != values.end();
}

std::optional<std::size_t> IndicatorDomain::rank(const std::string& token) const {
    auto it = std::find(ordering.begin(), ordering.end(), token);
    if (it == ordering.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ordering.begin());
}

const Variable* Construct::find_variable(const std::string& variable_name) const {
    for (const auto& v : variables) {
        if (v.name == variable_name) return &v;
    }
    return nullptr;
}

std::string VariableRef::display() const {
    return construct + "." + (variable ? *variable : std::string("*"));
}

std::string to_string(InteractionKind kind) {
    switch (kind) {
        case InteractionKind::categoric: return "categoric";
        case InteractionKind::sequential: return "sequential";
        case InteractionKind::determinant: return "determinant";
    }
    return "categoric";
}

std::optional<InteractionKind> interaction_kind_from(const std::string& word) {
    if (word == "categoric") return InteractionKind::categoric;
    if (word == "sequential") return InteractionKind::sequential;
    if (word == "determinant") return InteractionKind::determinant;
    return std::nullopt;
}

const Archetype::Assignment* Archetype::find(const std::string& construct,
                                             const std::string& variable) const {
    for (const auto& a : assignments) {
        if (a.construct == construct && a.variable == variable) return &a;
    }
    return nullptr;
}

const Construct* Theory::find_construct(const std::string& construct_name) const {
    for (const auto& c : constructs) {
        if (c.name == construct_name) return &c;
    }
    return nullptr;
}

const Proposition* Theory::find_proposition(const std::string& proposition_id) const {
    for (const auto& p : propositions) {
        if (p.id == proposition_id) return &p;
    }
    return nullptr;
}

const Archetype* Theory::find_archetype(const std::string& archetype_name) const {
    for (const auto& a : archetypes) {
        if (a.name == archetype_name) return &a;
    }
    return nullptr;
}

std::optional<int> Theory::proposition_ordinal(const std::string& proposition_id) const {
    for (std::size_t i = 0; i < propositions.size(); ++i) {
        if (propositions[i].id == proposition_id) return static_cast<int>(i) + 1;
    }
    return std::nullopt;
}

namespace {

bool has_edge_whitespace(const std::string& s) {
    if (s.empty()) return false;
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    return is_ws(s.front()) || is_ws(s.back());
}

// Proposition ids are bare identifiers in the DSL grammar, unlike other
// names, which may be quoted.
bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    auto head = static_cast<unsigned char>(s.front());
    if (!std::isalpha(head) && s.front() != '_') return false;
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        if (!std::isalnum(u) && c != '_' && c != '-') return false;
    }
    return true;
}

class Validator {
  public:
    explicit Validator(const Theory& theory) : theory_(theory) {}

    std::vector<Diagnostic> run() {
        check_theory_level_uniqueness();
        for (const auto& c : theory_.constructs) check_construct(c);
        for (const auto& p : theory_.propositions) check_proposition(p);
        for (const auto& a : theory_.archetypes) check_archetype(a);
        return std::move(diagnostics_);
    }

  private:
    void error(const SourceSpan& span, const std::string& message) {
        diagnostics_.push_back({Severity::error, span, message});
    }
    void warning(const SourceSpan& span, const std::string& message) {
        diagnostics_.push_back({Severity::warning, span, message});
    }

    void check_name(const SourceSpan& span, const std::string& what, const std::string& name) {
        if (name.empty()) {
            error(span, what + " name must not be empty");
        } else if (name == "*") {
            error(span, what + " name '*' is reserved for wildcard references");
        } else if (has_edge_whitespace(name)) {
            error(span, what + " name '" + name + "' has leading or trailing whitespace");
        }
    }

    void check_theory_level_uniqueness() {
        std::set<std::string> seen;
        for (const auto& c : theory_.constructs) {
            if (!seen.insert(c.name).second)
                error(c.span, "duplicate construct name '" + c.name + "'");
        }
        seen.clear();
        for (const auto& p : theory_.propositions) {
            if (!seen.insert(p.id).second)
                error(p.span, "duplicate proposition id '" + p.id + "'");
        }
        seen.clear();
        for (const auto& a : theory_.archetypes) {
            if (!seen.insert(a.name).second)
                error(a.span, "duplicate archetype name '" + a.name + "'");
        }
    }

    void check_construct(const Construct& c) {
        check_name(c.span, "construct", c.name);
        if (c.variables.empty()) {
            warning(c.span, "construct '" + c.name +
                                "' has no variables (taxonomy-only construct)");
        }
        std::set<std::string> seen;
        for (const auto& v : c.variables) {
            if (!seen.insert(v.name).second)
                error(v.span, "duplicate variable name '" + v.name + "' in construct '" +
                                  c.name + "'");
            check_variable(c, v);
        }
    }

    void check_variable(const Construct& c, const Variable& v) {
        check_name(v.span, "variable", v.name);
        const auto& d = v.domain;
        if (d.values.empty()) {
            error(v.span, "variable '" + c.name + "." + v.name + "' has an empty domain");
            return;
        }
        std::set<std::string> seen;
        for (const auto& token : d.values) {
            if (token.empty()) error(v.span, "empty indicator token in '" + v.name + "'");
            if (has_edge_whitespace(token))
                error(v.span, "indicator token '" + token + "' in '" + v.name +
                                  "' has leading or trailing whitespace");
            if (!seen.insert(token).second)
                error(v.span, "duplicate indicator token '" + token + "' in '" + c.name + "." +
                                  v.name + "'");
        }
        if (d.has_ordering()) {
            if (d.ordering.size() != d.values.size() ||
                std::set<std::string>(d.ordering.begin(), d.ordering.end()) != seen) {
                error(v.span, "ordering of '" + c.name + "." + v.name +
                                  "' is not a permutation of its values");
            }
        }
        if (d.absence && !d.contains(*d.absence)) {
            error(v.span, "absence value '" + *d.absence + "' is not a member of '" + c.name +
                              "." + v.name + "'");
        }
    }

    // Returns the referenced construct when it exists, else reports and gives null.
    const Construct* check_ref(const SourceSpan& span, const std::string& owner,
                               const VariableRef& ref) {
        const Construct* c = theory_.find_construct(ref.construct);
        if (c == nullptr) {
            error(span, owner + " references undeclared construct '" + ref.construct + "'");
            return nullptr;
        }
        if (!ref.is_wildcard() && c->find_variable(*ref.variable) == nullptr) {
            error(span, owner + " references undeclared variable '" + ref.display() + "'");
            return nullptr;
        }
        return c;
    }

    void check_proposition(const Proposition& p) {
        if (!is_identifier(p.id)) {
            error(p.span, "proposition id '" + p.id +
                              "' must be a bare identifier ([A-Za-z_][A-Za-z0-9_-]*)");
        }
        const Construct* left = check_ref(p.span, "proposition '" + p.id + "'", p.left);
        check_ref(p.span, "proposition '" + p.id + "'", p.right);
        // A wildcard left side is only meaningful for taxonomy-only constructs:
        // with measurable variables the grid needs exactly one column family.
        if (left != nullptr && p.left.is_wildcard() && !left->variables.empty()) {
            error(p.span, "proposition '" + p.id +
                              "': left side must name a single variable; write one "
                              "proposition per left variable of '" +
                              p.left.construct + "'");
        }
        if (p.quotes.empty()) {
            warning(p.span, "proposition '" + p.id + "' has no grounding quotations");
        }
        for (const auto& q : p.quotes) {
            if (q.excerpt.empty())
                error(q.span, "proposition '" + p.id + "' has a quotation with empty excerpt");
        }
    }

    void check_archetype(const Archetype& a) {
        check_name(a.span, "archetype", a.name);
        if (a.assignments.empty()) {
            warning(a.span, "archetype '" + a.name + "' has no assignments");
        }
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& as : a.assignments) {
            if (!seen.insert({as.construct, as.variable}).second) {
                error(as.span, "archetype '" + a.name + "' assigns '" + as.construct + "." +
                                   as.variable + "' more than once");
                continue;
            }
            const Construct* c = theory_.find_construct(as.construct);
            if (c == nullptr) {
                error(as.span, "archetype '" + a.name + "' references undeclared construct '" +
                                   as.construct + "'");
                continue;
            }
            const Variable* v = c->find_variable(as.variable);
            if (v == nullptr) {
                error(as.span, "archetype '" + a.name + "' references undeclared variable '" +
                                   as.construct + "." + as.variable + "'");
                continue;
            }
            if (!v->domain.contains(as.value)) {
                error(as.span, "archetype '" + a.name + "' assigns '" + as.value +
                                   "' which is not in the domain of '" + as.construct + "." +
                                   as.variable + "'");
            }
        }
    }

    const Theory& theory_;
    std::vector<Diagnostic> diagnostics_;
};

}  // namespace

std::vector<Diagnostic> validate(const Theory& theory) {
    return Validator(theory).run();
}

std::vector<ResolvedVariable> resolve(const Theory& theory, const VariableRef& ref) {
    const Construct* c = theory.find_construct(ref.construct);
    if (c == nullptr) {
        throw Error(ErrorKind::resolution, "unresolved construct '" + ref.construct + "'",
                    ref.construct);
    }
    std::vector<ResolvedVariable> out;
    if (ref.is_wildcard()) {
        for (const auto& v : c->variables) out.push_back({c, &v});
        return out;
    }
    const Variable* v = c->find_variable(*ref.variable);
    if (v == nullptr) {
        throw Error(ErrorKind::resolution, "unresolved variable '" + ref.display() + "'",
                    ref.display());
    }
    out.push_back({c, v});
    return out;
}

}  // namespace theoryforge
