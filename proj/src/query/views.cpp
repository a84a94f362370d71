#include "kgforge/query/views.hpp"

#include <algorithm>

#include "kgforge/common/error.hpp"
#include "kgforge/query/parser.hpp"

namespace kgforge::query {

using graph::NodeHandle;
using graph::PropertyGraph;

PropertyGraph extract_view(const PropertyGraph& g, const ViewSpec& spec) {
  if (!g.frozen()) throw Error(Errc::NotFrozen, "views are extracted from frozen graphs");
  if (spec.labels.empty() && spec.predicates.empty())
    throw Error(Errc::EmptySelection, "a view needs at least one label or predicate");
  ExprPtr node_filter, edge_filter;
  if (!spec.node_filter.empty()) node_filter = parse_filter(spec.node_filter, {"n"}, {});
  if (!spec.edge_filter.empty()) edge_filter = parse_filter(spec.edge_filter, {}, {"r"});

  PropertyGraph view;
  std::vector<std::optional<NodeHandle>> mapped(g.node_capacity());
  FilterScope scope{&g, {}, {}};
  for (NodeHandle h : g.node_handles()) {
    const auto& n = g.node(h);
    if (!spec.labels.empty() &&
        std::none_of(n.labels.begin(), n.labels.end(), [&](const std::string& l) { return spec.labels.count(l) > 0; }))
      continue;
    if (node_filter) {
      scope.nodes = {{"n", h}};
      if (!evaluate_filter(*node_filter, scope)) continue;
    }
    graph::Node copy = n;
    if (!spec.include_properties) copy.properties.clear();
    mapped[h.ordinal] = view.add_node(std::move(copy));
  }
  scope.nodes.clear();
  for (graph::EdgeId id : g.edge_ids()) {
    const auto& e = g.edge(id);
    if (!spec.predicates.empty() && !spec.predicates.count(e.predicate)) continue;
    if (!mapped[e.src.ordinal] || !mapped[e.dst.ordinal]) continue;
    if (edge_filter) {
      scope.edges = {{"r", id}};
      if (!evaluate_filter(*edge_filter, scope)) continue;
    }
    view.add_edge(*mapped[e.src.ordinal], *mapped[e.dst.ordinal], e.predicate,
                  spec.include_properties ? e.properties : graph::PropertyMap{});
  }
  view.freeze();
  return view;
}

ViewStats view_stats(const PropertyGraph& view) {
  ViewStats s;
  const auto gs = view.stats();
  s.label_counts = gs.label_counts;
  s.degree_histogram = gs.degree_histogram;
  for (graph::EdgeId id : view.edge_ids()) {
    const auto& e = view.edge(id);
    for (const auto& ls : view.node(e.src).labels)
      for (const auto& ld : view.node(e.dst).labels) ++s.edge_type_counts[{ls, ld, e.predicate}];
  }
  return s;
}

}  // namespace kgforge::query
