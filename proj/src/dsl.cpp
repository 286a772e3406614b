#include "theoryforge/dsl.hpp"

#include <cctype>
#include <sstream>

namespace theoryforge {

namespace {

enum class TokKind {
    ident,
    string,
    lbrace,
    rbrace,
    comma,
    dot,
    star,
    equals,
    less,
    arrow,
    end,
};

struct Token {
    TokKind kind = TokKind::end;
    std::string text;  // ident name or decoded string content
    SourceSpan span;
};

const char* describe(TokKind kind) {
    switch (kind) {
        case TokKind::ident: return "identifier";
        case TokKind::string: return "string";
        case TokKind::lbrace: return "'{'";
        case TokKind::rbrace: return "'}'";
        case TokKind::comma: return "','";
        case TokKind::dot: return "'.'";
        case TokKind::star: return "'*'";
        case TokKind::equals: return "'='";
        case TokKind::less: return "'<'";
        case TokKind::arrow: return "'->'";
        case TokKind::end: return "end of input";
    }
    return "?";
}

std::string describe(const Token& tok) {
    if (tok.kind == TokKind::ident) return "'" + tok.text + "'";
    if (tok.kind == TokKind::string) return "string \"" + tok.text + "\"";
    return describe(tok.kind);
}

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string trimmed(std::string s) {
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_ws(s[b])) ++b;
    while (e > b && is_ws(s[e - 1])) --e;
    return s.substr(b, e - b);
}

class Lexer {
  public:
    Lexer(std::string_view source, const std::string& filename)
        : src_(source), file_(filename) {
        // UTF-8 byte-order mark is skipped silently.
        if (src_.size() >= 3 && static_cast<unsigned char>(src_[0]) == 0xEF &&
            static_cast<unsigned char>(src_[1]) == 0xBB &&
            static_cast<unsigned char>(src_[2]) == 0xBF) {
            pos_ = 3;
        }
    }

    // Tokenizes the whole input. On a lexical error, appends the diagnostic
    // and stops; the token list always ends with an `end` token.
    std::vector<Token> run(std::vector<Diagnostic>& diagnostics) {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            SourceSpan here = span();
            if (eof()) {
                out.push_back({TokKind::end, "", here});
                return out;
            }
            char c = peek();
            if (c == '{') { out.push_back({TokKind::lbrace, "{", here}); get(); continue; }
            if (c == '}') { out.push_back({TokKind::rbrace, "}", here}); get(); continue; }
            if (c == ',') { out.push_back({TokKind::comma, ",", here}); get(); continue; }
            if (c == '.') { out.push_back({TokKind::dot, ".", here}); get(); continue; }
            if (c == '*') { out.push_back({TokKind::star, "*", here}); get(); continue; }
            if (c == '=') { out.push_back({TokKind::equals, "=", here}); get(); continue; }
            if (c == '<') { out.push_back({TokKind::less, "<", here}); get(); continue; }
            if (c == '-' && peek(1) == '>') {
                out.push_back({TokKind::arrow, "->", here});
                get();
                get();
                continue;
            }
            if (c == '"') {
                std::string value;
                if (!lex_string(value, diagnostics)) {
                    out.push_back({TokKind::end, "", span()});
                    return out;
                }
                out.push_back({TokKind::string, value, here});
                continue;
            }
            if (is_ident_start(c)) {
                std::string value;
                value += get();
                // '-' stays inside an identifier unless it starts an arrow.
                while (!eof() && is_ident_char(peek())) {
                    if (peek() == '-' && peek(1) == '>') break;
                    value += get();
                }
                out.push_back({TokKind::ident, value, here});
                continue;
            }
            diagnostics.push_back(
                {Severity::error, here,
                 std::string("unexpected character '") + c + "' in input"});
            out.push_back({TokKind::end, "", here});
            return out;
        }
    }

  private:
    bool eof() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
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

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diagnostics)
        : tokens_(std::move(tokens)), diagnostics_(diagnostics) {}

    std::optional<Theory> run() {
        Theory theory;
        theory.span = peek().span;
        if (!expect_keyword("theory")) return std::nullopt;
        if (!expect(TokKind::string, "theory name")) return std::nullopt;
        theory.name = prev().text;
        if (!expect(TokKind::lbrace, "'{'")) return std::nullopt;
        while (!at(TokKind::rbrace) && !at(TokKind::end)) {
            if (at_keyword("construct")) {
                if (auto c = parse_construct()) theory.constructs.push_back(std::move(*c));
                else sync_to_item();
            } else if (at_keyword("proposition")) {
                if (auto p = parse_proposition()) theory.propositions.push_back(std::move(*p));
                else sync_to_item();
            } else if (at_keyword("archetype")) {
                if (auto a = parse_archetype()) theory.archetypes.push_back(std::move(*a));
                else sync_to_item();
            } else {
                error_here("expected 'construct', 'proposition', or 'archetype'");
                sync_to_item();
                if (at(TokKind::end)) break;
            }
        }
        if (!expect(TokKind::rbrace, "'}'")) return std::nullopt;
        if (!at(TokKind::end)) {
            diagnostics_.push_back({Severity::error, peek().span,
                                    "unexpected trailing input after theory block: " +
                                        describe(peek())});
            return std::nullopt;
        }
        if (has_errors(diagnostics_)) return std::nullopt;
        return theory;
    }

  private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        if (i >= tokens_.size()) i = tokens_.size() - 1;
        return tokens_[i];
    }
    const Token& prev() const { return tokens_[pos_ - 1]; }
    bool at(TokKind kind) const { return peek().kind == kind; }
    bool at_keyword(std::string_view word) const {
        return at(TokKind::ident) && peek().text == word;
    }
    void advance() {
        if (pos_ + 1 < tokens_.size()) ++pos_;
    }

    void error_here(const std::string& expected) {
        diagnostics_.push_back({Severity::error, peek().span,
                                "expected " + expected + ", got " + describe(peek())});
    }

    bool expect(TokKind kind, const std::string& expected) {
        if (!at(kind)) {
            error_here(expected);
            return false;
        }
        advance();
        return true;
    }

    bool expect_keyword(std::string_view word) {
        if (!at_keyword(word)) {
            error_here("'" + std::string(word) + "'");
            return false;
        }
        advance();
        return true;
    }

    // name := IDENT | STRING, trimmed; empty names are rejected.
    std::optional<std::string> parse_name(const std::string& what) {
        if (at(TokKind::ident) || at(TokKind::string)) {
            std::string value = trimmed(peek().text);
            if (value.empty()) {
                error_here("nonempty " + what);
                return std::nullopt;
            }
            advance();
            return value;
        }
        error_here(what);
        return std::nullopt;
    }

    std::optional<std::string> parse_token(const std::string& what = "indicator token") {
        return parse_name(what);
    }

    // Skips to the start of the next top-level item (or the theory's '}').
    void sync_to_item() {
        int depth = 0;
        while (!at(TokKind::end)) {
            if (depth == 0 && (at_keyword("construct") || at_keyword("proposition") ||
                               at_keyword("archetype"))) {
                return;
            }
            if (at(TokKind::lbrace)) ++depth;
            if (at(TokKind::rbrace)) {
                if (depth == 0) return;
                --depth;
            }
            advance();
        }
    }

    std::optional<Construct> parse_construct() {
        Construct construct;
        construct.span = peek().span;
        advance();  // 'construct'
        auto name = parse_name("construct name");
        if (!name) return std::nullopt;
        construct.name = *name;
        if (at(TokKind::string)) {
            construct.definition = peek().text;
            advance();
        }
        if (!expect(TokKind::lbrace, "'{'")) return std::nullopt;
        while (at_keyword("variable")) {
            auto v = parse_variable();
            if (!v) return std::nullopt;
            construct.variables.push_back(std::move(*v));
        }
        if (!expect(TokKind::rbrace, "'}' or 'variable'")) return std::nullopt;
        return construct;
    }

    std::optional<Variable> parse_variable() {
        Variable variable;
        variable.span = peek().span;
        advance();  // 'variable'
        auto name = parse_name("variable name");
        if (!name) return std::nullopt;
        variable.name = *name;
        if (!expect(TokKind::lbrace, "'{'")) return std::nullopt;
        for (;;) {
            auto token = parse_token();
            if (!token) return std::nullopt;
            variable.domain.values.push_back(*token);
            if (at(TokKind::comma)) {
                advance();
                continue;
            }
            break;
        }
        if (!expect(TokKind::rbrace, "',' or '}'")) return std::nullopt;
        // varclause*
        for (;;) {
            if (at_keyword("ordering") && peek(1).kind == TokKind::equals) {
                advance();
                advance();
                std::vector<std::string> ordering;
                auto first = parse_token();
                if (!first) return std::nullopt;
                ordering.push_back(*first);
                if (!at(TokKind::less)) {
                    error_here("'<' (an ordering needs at least two tokens)");
                    return std::nullopt;
                }
                while (at(TokKind::less)) {
                    advance();
                    auto next = parse_token();
                    if (!next) return std::nullopt;
                    ordering.push_back(*next);
                }
                variable.domain.ordering = std::move(ordering);
                continue;
            }
            if (at_keyword("absent") && peek(1).kind == TokKind::equals) {
                advance();
                advance();
                auto token = parse_token();
                if (!token) return std::nullopt;
                variable.domain.absence = *token;
                continue;
            }
            break;
        }
        return variable;
    }

    std::optional<VariableRef> parse_ref() {
        VariableRef ref;
        auto construct = parse_name("construct name");
        if (!construct) return std::nullopt;
        ref.construct = *construct;
        if (!expect(TokKind::dot, "'.'")) return std::nullopt;
        if (at(TokKind::star)) {
            advance();
            return ref;
        }
        auto variable = parse_name("variable name or '*'");
        if (!variable) return std::nullopt;
        ref.variable = *variable;
        return ref;
    }

    std::optional<Proposition> parse_proposition() {
        Proposition prop;
        prop.span = peek().span;
        advance();  // 'proposition'
        if (!at(TokKind::ident)) {
            error_here("proposition id");
            return std::nullopt;
        }
        prop.id = peek().text;
        advance();
        if (!at(TokKind::ident)) {
            error_here("'categoric', 'sequential', or 'determinant'");
            return std::nullopt;
        }
        auto kind = interaction_kind_from(peek().text);
        if (!kind) {
            error_here("'categoric', 'sequential', or 'determinant'");
            return std::nullopt;
        }
        prop.kind = *kind;
        advance();
        if (at_keyword("strategic")) {
            prop.strategic = true;
            advance();
        } else if (at_keyword("taxonomic")) {
            prop.strategic = false;
            advance();
        }
        if (!expect_keyword("relates")) return std::nullopt;
        auto left = parse_ref();
        if (!left) return std::nullopt;
        prop.left = std::move(*left);
        if (!expect(TokKind::arrow, "'->'")) return std::nullopt;
        auto right = parse_ref();
        if (!right) return std::nullopt;
        prop.right = std::move(*right);
        if (!expect_keyword("text")) return std::nullopt;
        if (!expect(TokKind::string, "proposition text string")) return std::nullopt;
        prop.text = prev().text;
        while (at_keyword("quote")) {
            Quotation q;
            q.span = peek().span;
            advance();
            if (!expect(TokKind::string, "quotation source string")) return std::nullopt;
            q.source = prev().text;
            if (!expect(TokKind::string, "quotation excerpt string")) return std::nullopt;
            q.excerpt = prev().text;
            prop.quotes.push_back(std::move(q));
        }
        if (at_keyword("template")) {
            advance();
            if (!expect(TokKind::string, "template string")) return std::nullopt;
            prop.template_override = prev().text;
        }
        return prop;
    }

    std::optional<Archetype> parse_archetype() {
        Archetype archetype;
        archetype.span = peek().span;
        advance();  // 'archetype'
        auto name = parse_name("archetype name");
        if (!name) return std::nullopt;
        archetype.name = *name;
        if (!expect(TokKind::lbrace, "'{'")) return std::nullopt;
        while (!at(TokKind::rbrace)) {
            Archetype::Assignment assignment;
            assignment.span = peek().span;
            auto construct = parse_name("construct name or '}'");
            if (!construct) return std::nullopt;
            assignment.construct = *construct;
            if (!expect(TokKind::dot, "'.'")) return std::nullopt;
            auto variable = parse_name("variable name");
            if (!variable) return std::nullopt;
            assignment.variable = *variable;
            if (!expect(TokKind::equals, "'='")) return std::nullopt;
            auto value = parse_token();
            if (!value) return std::nullopt;
            assignment.value = *value;
            archetype.assignments.push_back(std::move(assignment));
        }
        advance();  // '}'
        return archetype;
    }

    std::vector<Token> tokens_;
    std::vector<Diagnostic>& diagnostics_;
    std::size_t pos_ = 0;
};

void quote_into(std::ostream& out, const std::string& text) {
    out << '"';
    for (char c : text) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            case '\t': out << "\\t"; break;
            case '\r': out << "\\r"; break;
            default: out << c;
        }
    }
    out << '"';
}

void emit_name(std::ostream& out, const std::string& name) {
    if (is_bare_identifier(name)) {
        out << name;
    } else {
        quote_into(out, name);
    }
}

void emit_ref(std::ostream& out, const VariableRef& ref) {
    emit_name(out, ref.construct);
    out << '.';
    if (ref.is_wildcard()) {
        out << '*';
    } else {
        emit_name(out, *ref.variable);
    }
}

}  // namespace

bool is_bare_identifier(std::string_view name) {
    if (name.empty() || !is_ident_start(name.front())) return false;
    for (char c : name) {
        if (!is_ident_char(c)) return false;
    }
    return true;
}

ParseResult parse_theory(std::string_view source, const std::string& filename) {
    ParseResult result;
    Lexer lexer(source, filename);
    std::vector<Token> tokens = lexer.run(result.diagnostics);
    if (has_errors(result.diagnostics)) return result;

    Parser parser(std::move(tokens), result.diagnostics);
    std::optional<Theory> theory = parser.run();
    if (!theory || has_errors(result.diagnostics)) return result;

    // Surface semantic validation: errors make the parse fail as a whole,
    // warnings travel with the theory.
    std::vector<Diagnostic> semantic = validate(*theory);
    result.diagnostics.insert(result.diagnostics.end(), semantic.begin(), semantic.end());
    if (has_errors(result.diagnostics)) return result;
    result.theory = std::move(theory);
    return result;
}

std::string serialize_theory(const Theory& theory) {
    std::ostringstream out;
    out << "theory ";
    quote_into(out, theory.name);
    out << " {\n";
    for (const auto& c : theory.constructs) {
        out << "  construct ";
        emit_name(out, c.name);
        if (!c.definition.empty()) {
            out << ' ';
            quote_into(out, c.definition);
        }
        out << " {";
        if (c.variables.empty()) {
            out << " }\n";
            continue;
        }
        out << '\n';
        for (const auto& v : c.variables) {
            out << "    variable ";
            emit_name(out, v.name);
            out << " { ";
            for (std::size_t i = 0; i < v.domain.values.size(); ++i) {
                if (i > 0) out << ", ";
                emit_name(out, v.domain.values[i]);
            }
            out << " }";
            if (v.domain.has_ordering()) {
                out << " ordering = ";
                for (std::size_t i = 0; i < v.domain.ordering.size(); ++i) {
                    if (i > 0) out << " < ";
                    emit_name(out, v.domain.ordering[i]);
                }
            }
            if (v.domain.absence) {
                out << " absent = ";
                emit_name(out, *v.domain.absence);
            }
            out << '\n';
        }
        out << "  }\n";
    }
    for (const auto& p : theory.propositions) {
        out << "  proposition " << p.id << ' ' << to_string(p.kind);
        if (!p.strategic) out << " taxonomic";
        out << " relates ";
        emit_ref(out, p.left);
        out << " -> ";
        emit_ref(out, p.right);
        out << "\n    text ";
        quote_into(out, p.text);
        for (const auto& q : p.quotes) {
            out << "\n    quote ";
            quote_into(out, q.source);
            out << ' ';
            quote_into(out, q.excerpt);
        }
        if (p.template_override) {
            out << "\n    template ";
            quote_into(out, *p.template_override);
        }
        out << '\n';
    }
    for (const auto& a : theory.archetypes) {
        out << "  archetype ";
        emit_name(out, a.name);
        out << " {";
        if (a.assignments.empty()) {
            out << " }\n";
            continue;
        }
        out << '\n';
        for (const auto& as : a.assignments) {
            out << "    ";
            emit_name(out, as.construct);
            out << '.';
            emit_name(out, as.variable);
            out << " = ";
            emit_name(out, as.value);
            out << '\n';
        }
        out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace theoryforge
