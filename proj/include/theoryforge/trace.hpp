#pragma once

#include <map>
#include <string>
#include <vector>

#include "theoryforge/refine.hpp"

namespace theoryforge {

/// The chain-of-evidence graph: hypothesis -> cells -> proposition ->
/// variables/indicators -> constructs -> quotations.
struct TraceGraph {
    enum class NodeType {
        construct,
        variable,
        indicator,
        proposition,
        quotation,
        cell,
        hypothesis,
        archetype,
    };
    enum class EdgeType {
        houses,        // construct -> variable
        measures,      // indicator -> variable
        relates,       // proposition -> variable (or construct for taxonomy sides)
        grounds,       // quotation -> proposition
        derives_from,  // cell -> proposition/indicator; hypothesis -> its one cell
        merges,        // merged hypothesis -> constituent cell
        instantiates,  // archetype -> indicator
    };

    struct Node {
        std::string id;  // e.g. "construct:Team", "cell:h1.1"
        NodeType type = NodeType::construct;
        std::string label;
        std::map<std::string, std::string> attrs;  // e.g. status, rationale
    };
    struct Edge {
        std::string from;
        std::string to;
        EdgeType type = EdgeType::houses;
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;

    const Node* find(const std::string& id) const;
    std::size_t count_nodes(NodeType type) const;
    std::size_t count_edges(EdgeType type) const;
};

std::string to_string(TraceGraph::NodeType type);
std::string to_string(TraceGraph::EdgeType type);

// Node id helpers (stable, used by DOT/JSON output and by trace()).
std::string construct_node_id(const std::string& construct);
std::string variable_node_id(const std::string& construct, const std::string& variable);
std::string indicator_node_id(const std::string& construct, const std::string& variable,
                              const std::string& value);
std::string proposition_node_id(const std::string& id);
std::string quotation_node_id(const std::string& proposition, std::size_t index);
std::string cell_node_id(const std::string& id);
std::string hypothesis_node_id(const std::string& id);
std::string archetype_node_id(const std::string& name);

/// Builds the full graph from pipeline outputs. Throws Error(graph) on a
/// dangling internal reference. Pure function of its inputs.
TraceGraph build_graph(const Theory& theory, const std::vector<HypothesisGrid>& grids,
                       const std::vector<RefinedHypothesis>& hypotheses);

/// One backward chain from a hypothesis to its grounding quotations.
struct TraceStep {
    std::string role;  // hypothesis, cells, proposition, variables, constructs, quotations
    std::vector<std::string> node_ids;  // lexicographically ordered within the step
};

struct TraceResult {
    std::string hypothesis;
    std::vector<TraceStep> steps;
    std::vector<std::string> annotations;  // status/rationale/warning markers
};

/// Walks hypothesis -> constituent cells -> proposition -> bound variables ->
/// constructs -> quotations. Breadth-first, ties broken by node id. Throws
/// Error(unknown_id) for an unknown hypothesis.
TraceResult trace(const TraceGraph& graph, const std::string& hypothesis_id);

std::string graph_to_dot(const TraceGraph& graph);
Json graph_to_json(const TraceGraph& graph);

/// DOT restricted to the nodes/edges on one trace chain.
std::string trace_to_dot(const TraceGraph& graph, const TraceResult& result);
Json trace_to_json(const TraceResult& result);
/// One-line summary: "H1.1 <- cells {h1.1, h1.4} <- P1 <- ...".
std::string trace_summary(const TraceResult& result);

}  // namespace theoryforge
