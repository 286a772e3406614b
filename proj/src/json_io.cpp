#include "theoryforge/json_io.hpp"

#include "theoryforge/errors.hpp"

namespace theoryforge {

namespace {

Json ref_to_json(const VariableRef& ref) {
    Json out;
    out["construct"] = ref.construct;
    if (!ref.is_wildcard()) out["variable"] = *ref.variable;
    return out;
}

const Json& require(const Json& value, const char* key, const char* where) {
    if (!value.is_object() || !value.contains(key)) {
        throw Error(ErrorKind::format,
                    std::string("missing key \"") + key + "\" in " + where);
    }
    return value.at(key);
}

std::string require_string(const Json& value, const char* key, const char* where) {
    const Json& v = require(value, key, where);
    if (!v.is_string()) {
        throw Error(ErrorKind::format,
                    std::string("key \"") + key + "\" in " + where + " must be a string");
    }
    return v.get<std::string>();
}

VariableRef ref_from_json(const Json& value, const char* where) {
    VariableRef ref;
    ref.construct = require_string(value, "construct", where);
    if (value.contains("variable")) {
        if (!value.at("variable").is_string()) {
            throw Error(ErrorKind::format,
                        std::string("key \"variable\" in ") + where + " must be a string");
        }
        ref.variable = value.at("variable").get<std::string>();
    }
    return ref;
}

}  // namespace

Json theory_to_json(const Theory& theory) {
    Json out;
    out["name"] = theory.name;
    out["constructs"] = Json::array();
    for (const auto& c : theory.constructs) {
        Json jc;
        jc["name"] = c.name;
        if (!c.definition.empty()) jc["definition"] = c.definition;
        jc["variables"] = Json::array();
        for (const auto& v : c.variables) {
            Json jv;
            jv["name"] = v.name;
            jv["values"] = v.domain.values;
            if (v.domain.has_ordering()) jv["ordering"] = v.domain.ordering;
            if (v.domain.absence) jv["absence"] = *v.domain.absence;
            jc["variables"].push_back(std::move(jv));
        }
        out["constructs"].push_back(std::move(jc));
    }
    out["propositions"] = Json::array();
    for (const auto& p : theory.propositions) {
        Json jp;
        jp["id"] = p.id;
        jp["kind"] = to_string(p.kind);
        jp["strategic"] = p.strategic;
        jp["left"] = ref_to_json(p.left);
        jp["right"] = ref_to_json(p.right);
        jp["text"] = p.text;
        jp["quotes"] = Json::array();
        for (const auto& q : p.quotes) {
            jp["quotes"].push_back(Json{{"source", q.source}, {"excerpt", q.excerpt}});
        }
        if (p.template_override) jp["template"] = *p.template_override;
        out["propositions"].push_back(std::move(jp));
    }
    out["archetypes"] = Json::array();
    for (const auto& a : theory.archetypes) {
        Json ja;
        ja["name"] = a.name;
        ja["assignments"] = Json::array();
        for (const auto& as : a.assignments) {
            ja["assignments"].push_back(Json{{"construct", as.construct},
                                             {"variable", as.variable},
                                             {"value", as.value}});
        }
        out["archetypes"].push_back(std::move(ja));
    }
    return out;
}

Theory theory_from_json(const Json& document, const std::string& filename) {
    if (!document.is_object()) {
        throw Error(ErrorKind::format, "theory document must be a JSON object");
    }
    SourceSpan span{filename, 1, 1};
    Theory theory;
    theory.span = span;
    theory.name = require_string(document, "name", "theory");
    if (document.contains("constructs")) {
        for (const auto& jc : document.at("constructs")) {
            Construct c;
            c.span = span;
            c.name = require_string(jc, "name", "construct");
            if (jc.contains("definition")) c.definition = jc.at("definition").get<std::string>();
            if (jc.contains("variables")) {
                for (const auto& jv : jc.at("variables")) {
                    Variable v;
                    v.span = span;
                    v.name = require_string(jv, "name", "variable");
                    const Json& values = require(jv, "values", "variable");
                    if (!values.is_array()) {
                        throw Error(ErrorKind::format, "variable \"values\" must be an array");
                    }
                    for (const auto& t : values) v.domain.values.push_back(t.get<std::string>());
                    if (jv.contains("ordering")) {
                        for (const auto& t : jv.at("ordering"))
                            v.domain.ordering.push_back(t.get<std::string>());
                    }
                    if (jv.contains("absence"))
                        v.domain.absence = jv.at("absence").get<std::string>();
                    c.variables.push_back(std::move(v));
                }
            }
            theory.constructs.push_back(std::move(c));
        }
    }
    if (document.contains("propositions")) {
        for (const auto& jp : document.at("propositions")) {
            Proposition p;
            p.span = span;
            p.id = require_string(jp, "id", "proposition");
            auto kind = interaction_kind_from(require_string(jp, "kind", "proposition"));
            if (!kind) {
                throw Error(ErrorKind::format, "proposition '" + p.id +
                                                   "': kind must be categoric, sequential, "
                                                   "or determinant");
            }
            p.kind = *kind;
            p.strategic = jp.contains("strategic") ? jp.at("strategic").get<bool>() : true;
            p.left = ref_from_json(require(jp, "left", "proposition"), "left ref");
            p.right = ref_from_json(require(jp, "right", "proposition"), "right ref");
            p.text = require_string(jp, "text", "proposition");
            if (jp.contains("quotes")) {
                for (const auto& jq : jp.at("quotes")) {
                    Quotation q;
                    q.span = span;
                    q.source = require_string(jq, "source", "quote");
                    q.excerpt = require_string(jq, "excerpt", "quote");
                    p.quotes.push_back(std::move(q));
                }
            }
            if (jp.contains("template")) p.template_override = jp.at("template").get<std::string>();
            theory.propositions.push_back(std::move(p));
        }
    }
    if (document.contains("archetypes")) {
        for (const auto& ja : document.at("archetypes")) {
            Archetype a;
            a.span = span;
            a.name = require_string(ja, "name", "archetype");
            if (ja.contains("assignments")) {
                for (const auto& jas : ja.at("assignments")) {
                    Archetype::Assignment as;
                    as.span = span;
                    as.construct = require_string(jas, "construct", "assignment");
                    as.variable = require_string(jas, "variable", "assignment");
                    as.value = require_string(jas, "value", "assignment");
                    a.assignments.push_back(std::move(as));
                }
            }
            theory.archetypes.push_back(std::move(a));
        }
    }
    return theory;
}

Theory theory_from_json_text(const std::string& text, const std::string& filename) {
    Json document = Json::parse(text, nullptr, false);
    if (document.is_discarded()) {
        throw Error(ErrorKind::format, filename + ": malformed JSON");
    }
    return theory_from_json(document, filename);
}

}  // namespace theoryforge
