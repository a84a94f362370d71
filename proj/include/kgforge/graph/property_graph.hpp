#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgforge/graph/property_map.hpp"

namespace kgforge::graph {

struct NodeHandle {
  std::uint32_t ordinal = 0;
  friend auto operator<=>(const NodeHandle&, const NodeHandle&) = default;
};

using EdgeId = std::uint32_t;

struct Node {
  std::string curie;
  std::string uri;
  std::vector<std::string> labels;  // set semantics, first-insertion order
  PropertyMap properties;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  EdgeId id = 0;
  NodeHandle src;
  NodeHandle dst;
  std::string predicate;
  PropertyMap properties;
};

enum class Direction { Out, In, Both };

struct Neighbor {
  EdgeId edge;
  NodeHandle node;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct MergeReport {
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  std::size_t properties_unioned = 0;
};

struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::map<std::string, std::size_t> label_counts;
  std::map<std::string, std::size_t> predicate_counts;
  std::map<std::size_t, std::size_t> degree_histogram;  // total degree -> node count

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

// Value checks shared by ingestion and insertion.
bool is_valid_sequence(std::string_view s) noexcept;
bool is_valid_coordinate(std::string_view s) noexcept;

// In-memory property graph. Handles and edge ids are dense ordinals that stay
// valid until a merge removes the node (or folds the edge into another).
class PropertyGraph {
 public:
  NodeHandle add_node(Node node);
  EdgeId add_edge(NodeHandle src, NodeHandle dst, std::string_view predicate, PropertyMap properties = {});

  // Union properties into an existing node (enrichment).
  std::size_t merge_node_properties(NodeHandle handle, const PropertyMap& properties);

  std::vector<Neighbor> neighbors(NodeHandle node, Direction direction,
                                  const std::set<std::string, std::less<>>* predicate_filter = nullptr) const;

  MergeReport merge_nodes(NodeHandle representative, std::span<const NodeHandle> absorbed);

  GraphStats stats() const;

  void freeze() noexcept { frozen_ = true; }
  bool frozen() const noexcept { return frozen_; }
  // Mutable copy of a (possibly frozen) graph.
  PropertyGraph thawed_copy() const;

  bool contains(NodeHandle h) const noexcept;
  bool contains_edge(EdgeId id) const noexcept;
  std::optional<NodeHandle> find(std::string_view curie) const;
  std::optional<EdgeId> find_edge(NodeHandle src, NodeHandle dst, std::string_view predicate) const;
  const Node& node(NodeHandle h) const;
  const Edge& edge(EdgeId id) const;

  std::size_t node_count() const noexcept { return live_nodes_; }
  std::size_t edge_count() const noexcept { return live_edges_; }
  // Upper bound (exclusive) on ordinals ever issued.
  std::size_t node_capacity() const noexcept { return nodes_.size(); }

  std::vector<NodeHandle> node_handles() const;
  std::vector<EdgeId> edge_ids() const;
  const std::vector<EdgeId>& out_edges(NodeHandle h) const;
  const std::vector<EdgeId>& in_edges(NodeHandle h) const;

  const std::map<std::string, std::set<NodeHandle>, std::less<>>& label_index() const noexcept { return by_label_; }
  const std::map<std::string, std::set<EdgeId>, std::less<>>& predicate_index() const noexcept {
    return by_predicate_;
  }

 private:
  struct TripleKey {
    std::uint32_t src;
    std::uint32_t dst;
    std::uint32_t predicate;
    friend bool operator==(const TripleKey&, const TripleKey&) = default;
  };
  struct TripleHash {
    std::size_t operator()(const TripleKey& k) const noexcept;
  };

  void require_mutable() const;
  void require_node(NodeHandle h, bool endpoint) const;
  std::uint32_t intern_predicate(std::string_view predicate);
  std::optional<std::uint32_t> predicate_id(std::string_view predicate) const;
  void detach_edge(const Edge& e);
  void attach_edge(const Edge& e);

  std::vector<std::optional<Node>> nodes_;
  std::vector<std::optional<Edge>> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::unordered_map<std::string, NodeHandle> by_curie_;
  std::map<std::string, std::set<NodeHandle>, std::less<>> by_label_;
  std::map<std::string, std::set<EdgeId>, std::less<>> by_predicate_;
  std::unordered_map<std::string, std::uint32_t> predicate_ids_;
  std::unordered_map<TripleKey, EdgeId, TripleHash> triples_;
  std::size_t live_nodes_ = 0;
  std::size_t live_edges_ = 0;
  bool frozen_ = false;
};

}  // namespace kgforge::graph

template <>
struct std::hash<kgforge::graph::NodeHandle> {
  std::size_t operator()(const kgforge::graph::NodeHandle& h) const noexcept { return h.ordinal; }
};
