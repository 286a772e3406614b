#include "theoryforge/rules.hpp"

namespace theoryforge {

std::string to_string(ReviewRule::Action action) {
    switch (action) {
        case ReviewRule::Action::prune: return "prune";
        case ReviewRule::Action::refute: return "refute";
        case ReviewRule::Action::retain: return "retain";
    }
    return "prune";
}

namespace {

// Rules files get their own tiny lexer: '=' always separates, '"' opens a
// string, '#' comments to end of line, anything else clumps into words.
// Hypothesis/cell ids such as h1.10 therefore lex as single words.
struct RuleToken {
    enum class Kind { word, string, equals, end } kind = Kind::end;
    std::string text;
    SourceSpan span;
};

class RuleLexer {
  public:
    RuleLexer(std::string_view source, const std::string& filename)
        : src_(source), file_(filename) {}

    std::vector<RuleToken> run(std::vector<Diagnostic>& diagnostics) {
        std::vector<RuleToken> out;
        for (;;) {
            skip_trivia();
            SourceSpan here = span();
            if (eof()) {
                out.push_back({RuleToken::Kind::end, "", here});
                return out;
            }
            char c = peek();
            if (c == '=') {
                get();
                out.push_back({RuleToken::Kind::equals, "=", here});
                continue;
            }
            if (c == '"') {
                std::string value;
                if (!lex_string(value, diagnostics)) {
                    out.push_back({RuleToken::Kind::end, "", span()});
                    return out;
                }
                out.push_back({RuleToken::Kind::string, value, here});
                continue;
            }
            std::string word;
            while (!eof() && !is_separator(peek())) word += get();
            out.push_back({RuleToken::Kind::word, word, here});
        }
    }

  private:
    static bool is_separator(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '=' || c == '"' ||
               c == '#';
    }
    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    char get() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    SourceSpan span() const { return {file_, line_, col_}; }

    void skip_trivia() {
        for (;;) {
            while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r' ||
                              peek() == '\n')) {
                get();
            }
            if (!eof() && peek() == '#') {
                while (!eof() && peek() != '\n') get();
                continue;
            }
            return;
        }
    }

    bool lex_string(std::string& value, std::vector<Diagnostic>& diagnostics) {
        SourceSpan start = span();
        get();  // opening quote
        for (;;) {
            if (eof() || peek() == '\n') {
                diagnostics.push_back({Severity::error, start, "unterminated string"});
                return false;
            }
            char c = get();
            if (c == '"') return true;
            if (c == '\\') {
                if (eof()) {
                    diagnostics.push_back({Severity::error, start, "unterminated string"});
                    return false;
                }
                char esc = get();
                switch (esc) {
                    case '"': value += '"'; break;
                    case '\\': value += '\\'; break;
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    case 'r': value += '\r'; break;
                    default:
                        diagnostics.push_back(
                            {Severity::error, span(),
                             std::string("invalid escape sequence '\\") + esc + "'"});
                        return false;
                }
                continue;
            }
            value += c;
        }
    }

    std::string_view src_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

RulesParseResult parse_rules(std::string_view source, const std::string& filename) {
    RulesParseResult result;
    RuleLexer lexer(source, filename);
    std::vector<RuleToken> tokens = lexer.run(result.diagnostics);
    if (has_errors(result.diagnostics)) return result;

    std::size_t pos = 0;
    auto peek = [&]() -> const RuleToken& { return tokens[pos]; };
    auto advance = [&]() {
        if (pos + 1 < tokens.size()) ++pos;
    };
    auto error = [&](const SourceSpan& span, const std::string& message) {
        result.diagnostics.push_back({Severity::error, span, message});
    };

    while (peek().kind != RuleToken::Kind::end) {
        ReviewRule rule;
        rule.span = peek().span;
        if (peek().kind != RuleToken::Kind::word) {
            error(peek().span, "expected rule action (prune, refute, or retain)");
            return result;
        }
        const std::string action = peek().text;
        if (action == "prune") rule.action = ReviewRule::Action::prune;
        else if (action == "refute") rule.action = ReviewRule::Action::refute;
        else if (action == "retain") rule.action = ReviewRule::Action::retain;
        else {
            error(peek().span, "unknown rule action '" + action +
                                   "' (expected prune, refute, or retain)");
            return result;
        }
        advance();

        if (peek().kind == RuleToken::Kind::word && peek().text == "cell") {
            rule.target = ReviewRule::TargetKind::cell;
            advance();
            if (peek().kind != RuleToken::Kind::word && peek().kind != RuleToken::Kind::string) {
                error(peek().span, "expected cell id after 'cell'");
                return result;
            }
            rule.id = peek().text;
            advance();
        } else if (peek().kind == RuleToken::Kind::word && peek().text == "where") {
            rule.target = ReviewRule::TargetKind::predicate;
            advance();
            if (peek().kind != RuleToken::Kind::word && peek().kind != RuleToken::Kind::string) {
                error(peek().span, "expected proposition id after 'where'");
                return result;
            }
            rule.id = peek().text;
            advance();
            while (!(peek().kind == RuleToken::Kind::word && peek().text == "reason") &&
                   peek().kind != RuleToken::Kind::end) {
                ReviewRule::Atom atom;
                if (peek().kind != RuleToken::Kind::word &&
                    peek().kind != RuleToken::Kind::string) {
                    error(peek().span, "expected variable=token atom or 'reason'");
                    return result;
                }
                atom.variable = peek().text;
                advance();
                if (peek().kind != RuleToken::Kind::equals) {
                    error(peek().span, "expected '=' in atom");
                    return result;
                }
                advance();
                if (peek().kind != RuleToken::Kind::word &&
                    peek().kind != RuleToken::Kind::string) {
                    error(peek().span, "expected token after '='");
                    return result;
                }
                atom.value = peek().text;
                advance();
                rule.atoms.push_back(std::move(atom));
            }
            if (rule.atoms.empty()) {
                error(rule.span, "predicate rule needs at least one variable=token atom");
                return result;
            }
        } else if (peek().kind == RuleToken::Kind::word ||
                   peek().kind == RuleToken::Kind::string) {
            rule.target = ReviewRule::TargetKind::hypothesis;
            rule.id = peek().text;
            advance();
        } else {
            error(peek().span, "expected rule target (cell <id>, where <prop> ..., or <id>)");
            return result;
        }

        if (!(peek().kind == RuleToken::Kind::word && peek().text == "reason")) {
            error(peek().span, "every rule must end with: reason \"...\"");
            return result;
        }
        advance();
        if (peek().kind != RuleToken::Kind::string) {
            error(peek().span, "expected reason string");
            return result;
        }
        rule.reason = peek().text;
        advance();
        if (rule.reason.empty()) {
            error(rule.span, "reason must not be empty");
            return result;
        }
        result.rules.push_back(std::move(rule));
    }
    return result;
}

}  // namespace theoryforge
