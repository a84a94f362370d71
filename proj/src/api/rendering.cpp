#include "kgforge/api/rendering.hpp"

namespace kgforge::api {

Json render_node_properties(const graph::PropertyMap& props) {
  Json j = Json::object();
  for (const auto& [name, values] : props) {
    if (graph::is_scalar_property(name) && values.size() == 1)
      j[name] = values.front();
    else
      j[name] = values;
  }
  return j;
}

Json render_edge_properties(const graph::PropertyMap& props) {
  Json j = Json::object();
  for (const auto& [name, values] : props) j[name] = values;
  return j;
}

Json render_node(const graph::Node& node) {
  Json j;
  j["node_uri"] = node.uri;
  j["node_id"] = node.curie;
  j["node_labels"] = node.labels;
  j["node_properties"] = render_node_properties(node.properties);
  return j;
}

Json render_node_stub(const graph::Node& node) {
  Json j;
  j["node_uri"] = node.uri;
  j["node_id"] = node.curie;
  j["node_labels"] = node.labels;
  if (const auto* label = node.properties.find("Label"); label && !label->empty()) j["Label"] = label->front();
  return j;
}

Json render_relationship(const graph::PropertyGraph& g, const graph::Neighbor& n) {
  const auto& e = g.edge(n.edge);
  Json j;
  j["relationship_type"] = e.predicate;
  j["relationship_properties"] = render_edge_properties(e.properties);
  const auto node = render_node(g.node(n.node));
  for (const auto& [k, v] : node.items()) j[k] = v;
  return j;
}

Json cell_json(const query::Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return std::get<std::vector<std::string>>(c);
}

Json render_table(const query::ResultTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < table.columns.size(); ++i) r[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(r));
  }
  Json j;
  j["results"] = std::move(rows);
  return j;
}

}  // namespace kgforge::api
