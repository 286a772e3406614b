#include "theoryforge/trace.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "theoryforge/errors.hpp"

namespace theoryforge {

const TraceGraph::Node* TraceGraph::find(const std::string& id) const {
    for (const auto& node : nodes) {
        if (node.id == id) return &node;
    }
    return nullptr;
}

std::size_t TraceGraph::count_nodes(NodeType type) const {
    return static_cast<std::size_t>(std::count_if(
        nodes.begin(), nodes.end(), [&](const Node& n) { return n.type == type; }));
}

std::size_t TraceGraph::count_edges(EdgeType type) const {
    return static_cast<std::size_t>(std::count_if(
        edges.begin(), edges.end(), [&](const Edge& e) { return e.type == type; }));
}

std::string to_string(TraceGraph::NodeType type) {
    switch (type) {
        case TraceGraph::NodeType::construct: return "construct";
        case TraceGraph::NodeType::variable: return "variable";
        case TraceGraph::NodeType::indicator: return "indicator";
        case TraceGraph::NodeType::proposition: return "proposition";
        case TraceGraph::NodeType::quotation: return "quotation";
        case TraceGraph::NodeType::cell: return "cell";
        case TraceGraph::NodeType::hypothesis: return "hypothesis";
        case TraceGraph::NodeType::archetype: return "archetype";
    }
    return "construct";
}

std::string to_string(TraceGraph::EdgeType type) {
    switch (type) {
        case TraceGraph::EdgeType::houses: return "houses";
        case TraceGraph::EdgeType::measures: return "measures";
        case TraceGraph::EdgeType::relates: return "relates";
        case TraceGraph::EdgeType::grounds: return "grounds";
        case TraceGraph::EdgeType::derives_from: return "derives_from";
        case TraceGraph::EdgeType::merges: return "merges";
        case TraceGraph::EdgeType::instantiates: return "instantiates";
    }
    return "houses";
}

std::string construct_node_id(const std::string& construct) { return "construct:" + construct; }
std::string variable_node_id(const std::string& construct, const std::string& variable) {
    return "var:" + construct + "." + variable;
}
std::string indicator_node_id(const std::string& construct, const std::string& variable,
                              const std::string& value) {
    return "ind:" + construct + "." + variable + "=" + value;
}
std::string proposition_node_id(const std::string& id) { return "prop:" + id; }
std::string quotation_node_id(const std::string& proposition, std::size_t index) {
    return "quote:" + proposition + "#" + std::to_string(index + 1);
}
std::string cell_node_id(const std::string& id) { return "cell:" + id; }
std::string hypothesis_node_id(const std::string& id) { return "hyp:" + id; }
std::string archetype_node_id(const std::string& name) { return "archetype:" + name; }

namespace {

class GraphBuilder {
  public:
    GraphBuilder(const Theory& theory, const std::vector<HypothesisGrid>& grids,
                 const std::vector<RefinedHypothesis>& hypotheses)
        : theory_(theory), grids_(grids), hypotheses_(hypotheses) {}

    TraceGraph run() {
        add_structure();
        add_propositions();
        add_cells();
        add_hypotheses();
        add_archetypes();
        return std::move(graph_);
    }

  private:
    void add_node(const std::string& id, TraceGraph::NodeType type, const std::string& label,
                  std::map<std::string, std::string> attrs = {}) {
        if (!ids_.insert(id).second) return;
        graph_.nodes.push_back({id, type, label, std::move(attrs)});
    }

    void add_edge(const std::string& from, const std::string& to, TraceGraph::EdgeType type) {
        if (ids_.count(from) == 0 || ids_.count(to) == 0) {
            throw Error(ErrorKind::graph,
                        "dangling reference while building the trace graph: " + from + " -> " +
                            to);
        }
        graph_.edges.push_back({from, to, type});
    }

    void add_structure() {
        for (const auto& c : theory_.constructs) {
            add_node(construct_node_id(c.name), TraceGraph::NodeType::construct, c.name);
            for (const auto& v : c.variables) {
                std::string vid = variable_node_id(c.name, v.name);
                add_node(vid, TraceGraph::NodeType::variable, c.name + "." + v.name);
                add_edge(construct_node_id(c.name), vid, TraceGraph::EdgeType::houses);
                for (const auto& value : v.domain.values) {
                    std::string iid = indicator_node_id(c.name, v.name, value);
                    add_node(iid, TraceGraph::NodeType::indicator, v.name + "=" + value);
                    add_edge(iid, vid, TraceGraph::EdgeType::measures);
                }
            }
        }
    }

    void add_propositions() {
        for (const auto& p : theory_.propositions) {
            std::map<std::string, std::string> attrs;
            attrs["kind"] = to_string(p.kind);
            attrs["strategic"] = p.strategic ? "true" : "false";
            add_node(proposition_node_id(p.id), TraceGraph::NodeType::proposition,
                     p.id + ": " + p.text, std::move(attrs));
            relate(p, p.left);
            relate(p, p.right);
            for (std::size_t i = 0; i < p.quotes.size(); ++i) {
                std::string qid = quotation_node_id(p.id, i);
                add_node(qid, TraceGraph::NodeType::quotation, p.quotes[i].source,
                         {{"excerpt", p.quotes[i].excerpt}});
                add_edge(qid, proposition_node_id(p.id), TraceGraph::EdgeType::grounds);
            }
        }
    }

    // proposition -> each resolved variable; taxonomy-level sides (wildcard
    // over a zero-variable construct) relate the construct itself.
    void relate(const Proposition& p, const VariableRef& ref) {
        std::vector<ResolvedVariable> resolved = resolve(theory_, ref);
        if (resolved.empty()) {
            add_edge(proposition_node_id(p.id), construct_node_id(ref.construct),
                     TraceGraph::EdgeType::relates);
            return;
        }
        for (const auto& rv : resolved) {
            add_edge(proposition_node_id(p.id),
                     variable_node_id(rv.construct->name, rv.variable->name),
                     TraceGraph::EdgeType::relates);
        }
    }

    void add_cells() {
        for (const auto& grid : grids_) {
            for (const auto& cell : grid.cells) {
                std::string cid = cell_node_id(cell.id);
                add_node(cid, TraceGraph::NodeType::cell,
                         cell.id + " (" + cell.left.value + ", " + cell.right.variable + "=" +
                             cell.right.value + ")");
                add_edge(cid, proposition_node_id(grid.proposition),
                         TraceGraph::EdgeType::derives_from);
                add_edge(cid,
                         indicator_node_id(grid.left_construct, cell.left.variable,
                                           cell.left.value),
                         TraceGraph::EdgeType::derives_from);
                add_edge(cid,
                         indicator_node_id(grid.right_construct, cell.right.variable,
                                           cell.right.value),
                         TraceGraph::EdgeType::derives_from);
            }
        }
    }

    void add_hypotheses() {
        for (const auto& h : hypotheses_) {
            std::map<std::string, std::string> attrs;
            attrs["status"] = to_string(h.status);
            if (!h.rationale.empty()) attrs["rationale"] = h.rationale;
            if (h.refuted) attrs["refuted"] = h.refutation_reason;
            add_node(hypothesis_node_id(h.id), TraceGraph::NodeType::hypothesis,
                     h.id + ": " + h.statement, std::move(attrs));
            TraceGraph::EdgeType type = h.cells.size() > 1 ? TraceGraph::EdgeType::merges
                                                           : TraceGraph::EdgeType::derives_from;
            for (const auto& cell_id : h.cells) {
                if (ids_.count(cell_node_id(cell_id)) == 0) {
                    throw Error(ErrorKind::graph,
                                "hypothesis '" + h.id + "' references unknown cell '" +
                                    cell_id + "'",
                                cell_id);
                }
                add_edge(hypothesis_node_id(h.id), cell_node_id(cell_id), type);
            }
        }
    }

    void add_archetypes() {
        for (const auto& a : theory_.archetypes) {
            add_node(archetype_node_id(a.name), TraceGraph::NodeType::archetype, a.name);
            for (const auto& as : a.assignments) {
                std::string iid = indicator_node_id(as.construct, as.variable, as.value);
                if (ids_.count(iid) == 0) {
                    throw Error(ErrorKind::graph,
                                "archetype '" + a.name + "' references unknown indicator '" +
                                    as.construct + "." + as.variable + "=" + as.value + "'");
                }
                add_edge(archetype_node_id(a.name), iid, TraceGraph::EdgeType::instantiates);
            }
        }
    }

    const Theory& theory_;
    const std::vector<HypothesisGrid>& grids_;
    const std::vector<RefinedHypothesis>& hypotheses_;
    TraceGraph graph_;
    std::set<std::string> ids_;
};

}  // namespace

TraceGraph build_graph(const Theory& theory, const std::vector<HypothesisGrid>& grids,
                       const std::vector<RefinedHypothesis>& hypotheses) {
    return GraphBuilder(theory, grids, hypotheses).run();
}

TraceResult trace(const TraceGraph& graph, const std::string& hypothesis_id) {
    const std::string hid = hypothesis_node_id(hypothesis_id);
    const TraceGraph::Node* hypothesis = graph.find(hid);
    if (hypothesis == nullptr) {
        throw Error(ErrorKind::unknown_id, "unknown hypothesis '" + hypothesis_id + "'",
                    hypothesis_id);
    }

    TraceResult result;
    result.hypothesis = hypothesis_id;

    auto sorted = [](std::set<std::string> ids) {
        return std::vector<std::string>(ids.begin(), ids.end());
    };

    result.steps.push_back({"hypothesis", {hid}});

    std::set<std::string> cells;
    for (const auto& e : graph.edges) {
        if (e.from == hid && (e.type == TraceGraph::EdgeType::derives_from ||
                              e.type == TraceGraph::EdgeType::merges)) {
            cells.insert(e.to);
        }
    }
    result.steps.push_back({"cells", sorted(cells)});

    std::set<std::string> propositions;
    std::set<std::string> indicators;
    for (const auto& e : graph.edges) {
        if (cells.count(e.from) == 0 || e.type != TraceGraph::EdgeType::derives_from) continue;
        const TraceGraph::Node* to = graph.find(e.to);
        if (to == nullptr) continue;
        if (to->type == TraceGraph::NodeType::proposition) propositions.insert(e.to);
        if (to->type == TraceGraph::NodeType::indicator) indicators.insert(e.to);
    }
    result.steps.push_back({"proposition", sorted(propositions)});

    std::set<std::string> variables;
    for (const auto& e : graph.edges) {
        if (e.type == TraceGraph::EdgeType::measures && indicators.count(e.from) > 0) {
            variables.insert(e.to);
        }
    }
    result.steps.push_back({"variables", sorted(variables)});

    std::set<std::string> constructs;
    for (const auto& e : graph.edges) {
        if (e.type == TraceGraph::EdgeType::houses && variables.count(e.to) > 0) {
            constructs.insert(e.from);
        }
    }
    result.steps.push_back({"constructs", sorted(constructs)});

    std::set<std::string> quotations;
    for (const auto& e : graph.edges) {
        if (e.type == TraceGraph::EdgeType::grounds && propositions.count(e.to) > 0) {
            quotations.insert(e.from);
        }
    }
    result.steps.push_back({"quotations", sorted(quotations)});
    if (quotations.empty()) {
        for (const auto& pid : propositions) {
            result.annotations.push_back("warning: " + pid + " has no grounding quotations");
        }
    }

    auto status = hypothesis->attrs.find("status");
    if (status != hypothesis->attrs.end() && status->second != "retained") {
        result.annotations.push_back("status: " + status->second);
    }
    auto rationale = hypothesis->attrs.find("rationale");
    if (rationale != hypothesis->attrs.end()) {
        result.annotations.push_back("rationale: " + rationale->second);
    }
    auto refuted = hypothesis->attrs.find("refuted");
    if (refuted != hypothesis->attrs.end()) {
        result.annotations.push_back("refuted-by-evidence: " + refuted->second);
    }
    return result;
}

namespace {

std::string dot_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

const char* dot_shape(TraceGraph::NodeType type) {
    switch (type) {
        case TraceGraph::NodeType::construct: return "box";
        case TraceGraph::NodeType::variable: return "ellipse";
        case TraceGraph::NodeType::indicator: return "plaintext";
        case TraceGraph::NodeType::proposition: return "hexagon";
        case TraceGraph::NodeType::quotation: return "note";
        case TraceGraph::NodeType::cell: return "box";
        case TraceGraph::NodeType::hypothesis: return "octagon";
        case TraceGraph::NodeType::archetype: return "diamond";
    }
    return "box";
}

void emit_dot(std::ostream& out, const TraceGraph& graph,
              const std::set<std::string>* filter) {
    out << "digraph trace {\n  rankdir=LR;\n";
    for (const auto& node : graph.nodes) {
        if (filter != nullptr && filter->count(node.id) == 0) continue;
        out << "  \"" << dot_escape(node.id) << "\" [label=\"" << dot_escape(node.label)
            << "\", shape=" << dot_shape(node.type) << ", type=\"" << to_string(node.type)
            << "\"";
        auto status = node.attrs.find("status");
        if (status != node.attrs.end()) {
            out << ", status=\"" << dot_escape(status->second) << "\"";
        }
        out << "];\n";
    }
    for (const auto& edge : graph.edges) {
        if (filter != nullptr &&
            (filter->count(edge.from) == 0 || filter->count(edge.to) == 0)) {
            continue;
        }
        out << "  \"" << dot_escape(edge.from) << "\" -> \"" << dot_escape(edge.to)
            << "\" [label=\"" << to_string(edge.type) << "\"];\n";
    }
    out << "}\n";
}

}  // namespace

std::string graph_to_dot(const TraceGraph& graph) {
    std::ostringstream out;
    emit_dot(out, graph, nullptr);
    return out.str();
}

Json graph_to_json(const TraceGraph& graph) {
    Json out;
    out["nodes"] = Json::array();
    for (const auto& node : graph.nodes) {
        Json jn;
        jn["id"] = node.id;
        jn["type"] = to_string(node.type);
        jn["label"] = node.label;
        if (!node.attrs.empty()) {
            Json attrs;
            for (const auto& [key, value] : node.attrs) attrs[key] = value;
            jn["attrs"] = std::move(attrs);
        }
        out["nodes"].push_back(std::move(jn));
    }
    out["edges"] = Json::array();
    for (const auto& edge : graph.edges) {
        out["edges"].push_back(
            Json{{"from", edge.from}, {"to", edge.to}, {"type", to_string(edge.type)}});
    }
    return out;
}

std::string trace_to_dot(const TraceGraph& graph, const TraceResult& result) {
    std::set<std::string> keep;
    for (const auto& step : result.steps) {
        for (const auto& id : step.node_ids) keep.insert(id);
    }
    std::ostringstream out;
    emit_dot(out, graph, &keep);
    return out.str();
}

Json trace_to_json(const TraceResult& result) {
    Json out;
    out["hypothesis"] = result.hypothesis;
    out["steps"] = Json::array();
    for (const auto& step : result.steps) {
        out["steps"].push_back(Json{{"role", step.role}, {"nodes", step.node_ids}});
    }
    out["annotations"] = result.annotations;
    return out;
}

std::string trace_summary(const TraceResult& result) {
    std::ostringstream out;
    out << result.hypothesis;
    auto strip = [](const std::string& id) {
        std::size_t colon = id.find(':');
        return colon == std::string::npos ? id : id.substr(colon + 1);
    };
    for (std::size_t i = 1; i < result.steps.size(); ++i) {
        const TraceStep& step = result.steps[i];
        out << " <- " << step.role << " {";
        for (std::size_t k = 0; k < step.node_ids.size(); ++k) {
            if (k > 0) out << ", ";
            out << strip(step.node_ids[k]);
        }
        out << "}";
    }
    return out.str();
}

}  // namespace theoryforge
