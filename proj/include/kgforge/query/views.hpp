#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "kgforge/graph/property_graph.hpp"
#include "kgforge/query/evaluator.hpp"

namespace kgforge::query {

// Declarative subgraph selection. An empty label (predicate) set selects all
// labels (predicates); at least one of the two must be non-empty. Filters use
// the query expression language over `n` (nodes) and `r` (edges).
struct ViewSpec {
  std::set<std::string, std::less<>> labels;
  std::set<std::string, std::less<>> predicates;
  std::string node_filter;
  std::string edge_filter;
  bool include_properties = true;
};

// Induced subgraph; node and edge order follow the input. Result is frozen.
// Throws Error(EmptySelection).
graph::PropertyGraph extract_view(const graph::PropertyGraph& g, const ViewSpec& spec);

struct ViewStats {
  std::map<std::string, std::size_t> label_counts;
  // (source label, target label, predicate) -> edges; multi-label endpoints
  // contribute one count per label pair.
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> edge_type_counts;
  std::map<std::size_t, std::size_t> degree_histogram;
};

ViewStats view_stats(const graph::PropertyGraph& view);

// nodes.csv: id,uri,category,<properties...>; edges.csv: subject,predicate,
// object,<properties...>. Lists are `|`-joined, then quoted when needed.
void write_nodes_csv(std::ostream& out, const graph::PropertyGraph& g);
void write_edges_csv(std::ostream& out, const graph::PropertyGraph& g);
void write_table_csv(std::ostream& out, const ResultTable& table);

std::string csv_field(std::string_view value);

}  // namespace kgforge::query
