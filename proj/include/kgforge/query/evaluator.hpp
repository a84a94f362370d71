#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kgforge/graph/property_graph.hpp"
#include "kgforge/query/ast.hpp"

namespace kgforge::query {

using Cell = std::variant<std::string, std::vector<std::string>>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

// count('U') / length. Throws Error(EmptySequence).
double u_fraction(std::string_view sequence);
double symbol_fraction(std::string_view sequence, char symbol);

// Evaluates a parsed query over a frozen graph. Bindings are enumerated by
// ascending (node handle, edge id); ORDER BY is a stable sort applied before
// LIMIT. Absent properties read as empty lists.
ResultTable run_pattern_query(const graph::PropertyGraph& g, const QuerySpec& spec);
ResultTable run_query(const graph::PropertyGraph& g, std::string_view text);

// Variables visible to a filter expression.
struct FilterScope {
  const graph::PropertyGraph* graph = nullptr;
  std::vector<std::pair<std::string, graph::NodeHandle>> nodes;
  std::vector<std::pair<std::string, graph::EdgeId>> edges;
};

bool evaluate_filter(const Expr& expr, const FilterScope& scope);

// All A->B->C bindings whose two edges share at least one PubMedID. Columns:
// the three labels (node URIs) and common_pmids (first-edge order).
ResultTable shared_citation_triples(const graph::PropertyGraph& g, const std::array<std::string, 3>& labels);

}  // namespace kgforge::query
