#pragma once

#include "json.hpp"
#include "kgforge/graph/property_graph.hpp"
#include "kgforge/query/evaluator.hpp"

namespace kgforge::api {

using Json = nlohmann::ordered_json;

// Node properties: single-valued scalar properties (Label, Sequence,
// Description, Species) become strings, everything else arrays.
Json render_node_properties(const graph::PropertyMap& props);
// Edge properties are always arrays.
Json render_edge_properties(const graph::PropertyMap& props);

// {node_uri, node_id, node_labels, node_properties}
Json render_node(const graph::Node& node);
// {node_uri, node_id, node_labels, Label?} without the full property map
Json render_node_stub(const graph::Node& node);
// relationship fields followed by the neighbor's node fields, inlined
Json render_relationship(const graph::PropertyGraph& g, const graph::Neighbor& n);
// {"results": [ {column: cell, ...}, ... ]}
Json render_table(const query::ResultTable& table);

Json cell_json(const query::Cell& c);

}  // namespace kgforge::api
