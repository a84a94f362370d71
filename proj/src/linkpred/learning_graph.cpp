#include "kgforge/linkpred/learning_graph.hpp"

#include <algorithm>
#include <cmath>

#include "kgforge/common/error.hpp"

namespace kgforge::linkpred {

LearningGraph::LearningGraph(std::vector<std::string> ids, std::vector<std::vector<std::string>> labels,
                             std::vector<std::string> relations, std::vector<TypedEdge> edges)
    : ids_(std::move(ids)), labels_(std::move(labels)), relations_(std::move(relations)), edges_(std::move(edges)) {
  if (labels_.size() != ids_.size()) labels_.resize(ids_.size());
  for (std::uint32_t i = 0; i < ids_.size(); ++i)
    if (!index_.emplace(ids_[i], i).second) throw Error(Errc::DuplicateCurie, ids_[i]);
  for (const auto& e : edges_) {
    if (e.src >= ids_.size() || e.dst >= ids_.size()) throw Error(Errc::UnknownEndpoint, "edge endpoint out of range");
    if (e.rel >= relations_.size()) throw Error(Errc::InvalidValue, "edge relation out of range");
  }
  build_adjacency();
}

LearningGraph LearningGraph::from_graph(const graph::PropertyGraph& g) {
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> labels;
  std::unordered_map<std::uint32_t, std::uint32_t> dense;
  for (auto h : g.node_handles()) {
    dense.emplace(h.ordinal, static_cast<std::uint32_t>(ids.size()));
    const auto& n = g.node(h);
    ids.push_back(n.curie);
    labels.push_back(n.labels);
  }
  std::vector<std::string> relations;
  std::unordered_map<std::string, std::uint32_t> rel_ids;
  std::vector<TypedEdge> edges;
  for (auto id : g.edge_ids()) {
    const auto& e = g.edge(id);
    auto [it, added] = rel_ids.emplace(e.predicate, static_cast<std::uint32_t>(relations.size()));
    if (added) relations.push_back(e.predicate);
    edges.push_back({dense.at(e.src.ordinal), dense.at(e.dst.ordinal), it->second});
  }
  return LearningGraph(std::move(ids), std::move(labels), std::move(relations), std::move(edges));
}

LearningGraph LearningGraph::with_edges(std::vector<TypedEdge> edges) const {
  return LearningGraph(ids_, labels_, relations_, std::move(edges));
}

void LearningGraph::build_adjacency() {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  arcs.reserve(edges_.size() * 2);
  for (const auto& e : edges_) {
    if (e.src == e.dst) continue;
    arcs.emplace_back(e.src, e.dst);
    arcs.emplace_back(e.dst, e.src);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  offsets_.assign(ids_.size() + 1, 0);
  for (const auto& a : arcs) ++offsets_[a.first + 1];
  for (std::size_t i = 0; i < ids_.size(); ++i) offsets_[i + 1] += offsets_[i];
  adj_.resize(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) adj_[i] = arcs[i].second;
}

bool LearningGraph::adjacent(std::uint32_t u, std::uint32_t v) const {
  auto n = neighbors(u);
  return std::binary_search(n.begin(), n.end(), v);
}

bool LearningGraph::has_label(std::uint32_t u, std::string_view label) const {
  const auto& l = labels_.at(u);
  return std::find(l.begin(), l.end(), label) != l.end();
}

std::vector<std::uint32_t> LearningGraph::nodes_with_label(std::string_view label) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t u = 0; u < ids_.size(); ++u)
    if (has_label(u, label)) out.push_back(u);
  return out;
}

std::optional<std::uint32_t> LearningGraph::index_of(std::string_view curie) const {
  auto it = index_.find(std::string(curie));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> LearningGraph::relation_id(std::string_view name) const {
  for (std::uint32_t i = 0; i < relations_.size(); ++i)
    if (relations_[i] == name) return i;
  return std::nullopt;
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += double(a[i]) * b[i];
    aa += double(a[i]) * a[i];
    bb += double(b[i]) * b[i];
  }
  if (aa == 0 || bb == 0) return 0;
  return ab / std::sqrt(aa * bb);
}

}  // namespace kgforge::linkpred
