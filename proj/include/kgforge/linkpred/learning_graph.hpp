#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgforge/graph/property_graph.hpp"

namespace kgforge::linkpred {

struct TypedEdge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  std::uint32_t rel = 0;
  friend auto operator<=>(const TypedEdge&, const TypedEdge&) = default;
};

// Dense, learning-oriented view of a property graph: nodes 0..n-1, directed
// typed edges, and an undirected neighbor structure for walks.
class LearningGraph {
 public:
  LearningGraph() = default;
  LearningGraph(std::vector<std::string> ids, std::vector<std::vector<std::string>> labels,
                std::vector<std::string> relations, std::vector<TypedEdge> edges);

  static LearningGraph from_graph(const graph::PropertyGraph& g);

  // Same nodes and relation vocabulary, different edge set.
  LearningGraph with_edges(std::vector<TypedEdge> edges) const;

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<TypedEdge>& edges() const noexcept { return edges_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::vector<std::string>& relations() const noexcept { return relations_; }
  const std::vector<std::string>& labels(std::uint32_t u) const { return labels_.at(u); }
  bool has_label(std::uint32_t u, std::string_view label) const;
  std::vector<std::uint32_t> nodes_with_label(std::string_view label) const;

  std::optional<std::uint32_t> index_of(std::string_view curie) const;
  std::optional<std::uint32_t> relation_id(std::string_view name) const;

  // Undirected, sorted, de-duplicated neighbor list.
  std::span<const std::uint32_t> neighbors(std::uint32_t u) const {
    return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
  }
  std::size_t degree(std::uint32_t u) const { return offsets_[u + 1] - offsets_[u]; }
  bool adjacent(std::uint32_t u, std::uint32_t v) const;
  // Distinct unordered node pairs joined by at least one edge.
  std::size_t pair_count() const noexcept { return adj_.size() / 2; }

 private:
  void build_adjacency();

  std::vector<std::string> ids_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::string> relations_;
  std::vector<TypedEdge> edges_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> adj_;
};

// Row-major float matrix, one row per node (or relation).
struct Embedding {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<float> data;

  Embedding() = default;
  Embedding(std::size_t r, std::size_t d) : rows(r), dim(d), data(r * d, 0.0f) {}
  std::span<float> row(std::size_t i) { return {data.data() + i * dim, dim}; }
  std::span<const float> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
};

double cosine_similarity(std::span<const float> a, std::span<const float> b);

}  // namespace kgforge::linkpred
