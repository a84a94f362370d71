#include "kgforge/graph/property_graph.hpp"

#include <algorithm>
#include <cctype>

#include "kgforge/common/error.hpp"

namespace kgforge::graph {

bool is_valid_sequence(std::string_view s) noexcept {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == 'A' || c == 'C' || c == 'G' || c == 'U' || c == 'N'; });
}

bool is_valid_coordinate(std::string_view s) noexcept {
  // ^[A-Za-z0-9_.]+:[0-9]+-[0-9]+[+-]$ with start <= end
  auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  for (char c : s.substr(0, colon))
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
  if (s.size() < colon + 5) return false;
  char strand = s.back();
  if (strand != '+' && strand != '-') return false;
  std::string_view range = s.substr(colon + 1, s.size() - colon - 2);
  auto dash = range.find('-');
  if (dash == std::string_view::npos || dash == 0 || dash + 1 == range.size()) return false;
  auto digits = [](std::string_view d) {
    return std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string_view start = range.substr(0, dash), end = range.substr(dash + 1);
  if (!digits(start) || !digits(end)) return false;
  auto strip = [](std::string_view d) {
    while (d.size() > 1 && d.front() == '0') d.remove_prefix(1);
    return d;
  };
  start = strip(start);
  end = strip(end);
  if (start.size() != end.size()) return start.size() < end.size();
  return start <= end;
}

std::size_t PropertyGraph::TripleHash::operator()(const TripleKey& k) const noexcept {
  std::size_t h = k.src;
  h = h * 0x9e3779b97f4a7c15ULL ^ k.dst;
  h = h * 0x9e3779b97f4a7c15ULL ^ k.predicate;
  return h;
}

void PropertyGraph::require_mutable() const {
  if (frozen_) throw Error(Errc::FrozenGraph, "graph is frozen");
}

void PropertyGraph::require_node(NodeHandle h, bool endpoint) const {
  if (!contains(h))
    throw Error(endpoint ? Errc::UnknownEndpoint : Errc::UnknownHandle,
                "no node with handle " + std::to_string(h.ordinal));
}

bool PropertyGraph::contains(NodeHandle h) const noexcept {
  return h.ordinal < nodes_.size() && nodes_[h.ordinal].has_value();
}

bool PropertyGraph::contains_edge(EdgeId id) const noexcept { return id < edges_.size() && edges_[id].has_value(); }

std::optional<NodeHandle> PropertyGraph::find(std::string_view curie) const {
  auto it = by_curie_.find(std::string(curie));
  if (it == by_curie_.end()) return std::nullopt;
  return it->second;
}

const Node& PropertyGraph::node(NodeHandle h) const {
  require_node(h, false);
  return *nodes_[h.ordinal];
}

const Edge& PropertyGraph::edge(EdgeId id) const {
  if (!contains_edge(id)) throw Error(Errc::UnknownHandle, "no edge with id " + std::to_string(id));
  return *edges_[id];
}

const std::vector<EdgeId>& PropertyGraph::out_edges(NodeHandle h) const {
  require_node(h, false);
  return out_[h.ordinal];
}

const std::vector<EdgeId>& PropertyGraph::in_edges(NodeHandle h) const {
  require_node(h, false);
  return in_[h.ordinal];
}

NodeHandle PropertyGraph::add_node(Node node) {
  require_mutable();
  if (node.curie.empty()) throw Error(Errc::InvalidCurie, "empty curie");
  if (by_curie_.count(node.curie)) throw Error(Errc::DuplicateCurie, node.curie);
  std::vector<std::string> labels;
  for (auto& l : node.labels)
    if (!l.empty() && std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(std::move(l));
  if (labels.empty()) throw Error(Errc::InvalidLabelSet, node.curie + " has no labels");
  node.labels = std::move(labels);
  if (const auto* seqs = node.properties.find("Sequence"))
    for (const auto& s : *seqs)
      if (!is_valid_sequence(s)) throw Error(Errc::InvalidSequence, node.curie + ": " + s);
  if (const auto* coords = node.properties.find("Genomic_coordinates"))
    for (const auto& c : *coords)
      if (!is_valid_coordinate(c)) throw Error(Errc::InvalidCoordinate, node.curie + ": " + c);

  NodeHandle h{static_cast<std::uint32_t>(nodes_.size())};
  by_curie_.emplace(node.curie, h);
  for (const auto& l : node.labels) by_label_[l].insert(h);
  nodes_.emplace_back(std::move(node));
  out_.emplace_back();
  in_.emplace_back();
  ++live_nodes_;
  return h;
}

std::uint32_t PropertyGraph::intern_predicate(std::string_view predicate) {
  auto [it, inserted] = predicate_ids_.try_emplace(std::string(predicate), static_cast<std::uint32_t>(predicate_ids_.size()));
  return it->second;
}

std::optional<std::uint32_t> PropertyGraph::predicate_id(std::string_view predicate) const {
  auto it = predicate_ids_.find(std::string(predicate));
  if (it == predicate_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> PropertyGraph::find_edge(NodeHandle src, NodeHandle dst, std::string_view predicate) const {
  auto pid = predicate_id(predicate);
  if (!pid) return std::nullopt;
  auto it = triples_.find({src.ordinal, dst.ordinal, *pid});
  if (it == triples_.end()) return std::nullopt;
  return it->second;
}

namespace {

void sorted_insert(std::vector<EdgeId>& v, EdgeId id) { v.insert(std::lower_bound(v.begin(), v.end(), id), id); }

void sorted_erase(std::vector<EdgeId>& v, EdgeId id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it != v.end() && *it == id) v.erase(it);
}

}  // namespace

void PropertyGraph::attach_edge(const Edge& e) {
  sorted_insert(out_[e.src.ordinal], e.id);
  sorted_insert(in_[e.dst.ordinal], e.id);
  by_predicate_[e.predicate].insert(e.id);
  triples_[{e.src.ordinal, e.dst.ordinal, intern_predicate(e.predicate)}] = e.id;
}

void PropertyGraph::detach_edge(const Edge& e) {
  sorted_erase(out_[e.src.ordinal], e.id);
  sorted_erase(in_[e.dst.ordinal], e.id);
  auto pit = by_predicate_.find(e.predicate);
  pit->second.erase(e.id);
  if (pit->second.empty()) by_predicate_.erase(pit);
  triples_.erase({e.src.ordinal, e.dst.ordinal, *predicate_id(e.predicate)});
}

EdgeId PropertyGraph::add_edge(NodeHandle src, NodeHandle dst, std::string_view predicate, PropertyMap properties) {
  require_mutable();
  require_node(src, true);
  require_node(dst, true);
  if (src == dst) throw Error(Errc::SelfLoop, nodes_[src.ordinal]->curie + " -" + std::string(predicate) + "-> itself");
  if (predicate.empty()) throw Error(Errc::InvalidValue, "empty predicate");
  if (auto existing = find_edge(src, dst, predicate)) {
    edges_[*existing]->properties.merge(properties);
    return *existing;
  }
  Edge e;
  e.id = static_cast<EdgeId>(edges_.size());
  e.src = src;
  e.dst = dst;
  e.predicate = std::string(predicate);
  e.properties.merge(properties);  // normalizes duplicates and empty lists
  attach_edge(e);
  edges_.emplace_back(std::move(e));
  ++live_edges_;
  return edges_.back()->id;
}

std::size_t PropertyGraph::merge_node_properties(NodeHandle handle, const PropertyMap& properties) {
  require_mutable();
  require_node(handle, false);
  Node& n = *nodes_[handle.ordinal];
  if (const auto* seqs = properties.find("Sequence"))
    for (const auto& s : *seqs)
      if (!is_valid_sequence(s)) throw Error(Errc::InvalidSequence, n.curie + ": " + s);
  if (const auto* coords = properties.find("Genomic_coordinates"))
    for (const auto& c : *coords)
      if (!is_valid_coordinate(c)) throw Error(Errc::InvalidCoordinate, n.curie + ": " + c);
  return n.properties.merge(properties);
}

std::vector<Neighbor> PropertyGraph::neighbors(NodeHandle node, Direction direction,
                                               const std::set<std::string, std::less<>>* predicate_filter) const {
  require_node(node, false);
  std::vector<Neighbor> out;
  auto accept = [&](const Edge& e) { return !predicate_filter || predicate_filter->count(e.predicate) > 0; };
  const auto& outs = out_[node.ordinal];
  const auto& ins = in_[node.ordinal];
  // merge the two sorted lists so the result is ordered by edge id
  std::size_t i = 0, j = 0;
  const bool use_out = direction != Direction::In;
  const bool use_in = direction != Direction::Out;
  while ((use_out && i < outs.size()) || (use_in && j < ins.size())) {
    bool take_out;
    if (!use_out || i >= outs.size()) take_out = false;
    else if (!use_in || j >= ins.size()) take_out = true;
    else take_out = outs[i] < ins[j];
    if (take_out) {
      const Edge& e = *edges_[outs[i++]];
      if (accept(e)) out.push_back({e.id, e.dst});
    } else {
      const Edge& e = *edges_[ins[j++]];
      if (accept(e)) out.push_back({e.id, e.src});
    }
  }
  return out;
}

MergeReport PropertyGraph::merge_nodes(NodeHandle representative, std::span<const NodeHandle> absorbed) {
  require_mutable();
  require_node(representative, false);
  std::set<NodeHandle> group;
  for (NodeHandle h : absorbed) {
    require_node(h, false);
    if (h == representative)
      throw Error(Errc::RepresentativeInAbsorbedSet, nodes_[h.ordinal]->curie);
    if (!group.insert(h).second) throw Error(Errc::DuplicateHandle, nodes_[h.ordinal]->curie);
  }

  MergeReport report;
  report.edges_before = live_edges_;
  Node& rep = *nodes_[representative.ordinal];

  for (NodeHandle h : group) {
    Node& n = *nodes_[h.ordinal];
    report.properties_unioned += rep.properties.merge(n.properties);
    for (const auto& l : n.labels) {
      if (std::find(rep.labels.begin(), rep.labels.end(), l) == rep.labels.end()) {
        rep.labels.push_back(l);
        by_label_[l].insert(representative);
      }
    }
  }

  std::vector<EdgeId> incident;
  for (NodeHandle h : group) {
    incident.insert(incident.end(), out_[h.ordinal].begin(), out_[h.ordinal].end());
    incident.insert(incident.end(), in_[h.ordinal].begin(), in_[h.ordinal].end());
  }
  std::sort(incident.begin(), incident.end());
  incident.erase(std::unique(incident.begin(), incident.end()), incident.end());

  auto redirect = [&](NodeHandle h) { return group.count(h) ? representative : h; };
  for (EdgeId id : incident) {
    Edge e = std::move(*edges_[id]);
    detach_edge(e);
    edges_[id].reset();
    --live_edges_;
    e.src = redirect(e.src);
    e.dst = redirect(e.dst);
    if (e.src == e.dst) continue;  // intra-group edge
    if (auto existing = find_edge(e.src, e.dst, e.predicate)) {
      edges_[*existing]->properties.merge(e.properties);
      continue;
    }
    attach_edge(e);
    edges_[id] = std::move(e);
    ++live_edges_;
  }

  for (NodeHandle h : group) {
    Node& n = *nodes_[h.ordinal];
    by_curie_.erase(n.curie);
    for (const auto& l : n.labels) {
      auto it = by_label_.find(l);
      it->second.erase(h);
      if (it->second.empty()) by_label_.erase(it);
    }
    nodes_[h.ordinal].reset();
    --live_nodes_;
  }
  report.edges_after = live_edges_;
  return report;
}

GraphStats PropertyGraph::stats() const {
  GraphStats s;
  s.node_count = live_nodes_;
  s.edge_count = live_edges_;
  for (const auto& [label, members] : by_label_) s.label_counts[label] = members.size();
  for (const auto& [pred, ids] : by_predicate_) s.predicate_counts[pred] = ids.size();
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i]) ++s.degree_histogram[out_[i].size() + in_[i].size()];
  return s;
}

PropertyGraph PropertyGraph::thawed_copy() const {
  PropertyGraph copy = *this;
  copy.frozen_ = false;
  return copy;
}

std::vector<NodeHandle> PropertyGraph::node_handles() const {
  std::vector<NodeHandle> out;
  out.reserve(live_nodes_);
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i]) out.push_back(NodeHandle{static_cast<std::uint32_t>(i)});
  return out;
}

std::vector<EdgeId> PropertyGraph::edge_ids() const {
  std::vector<EdgeId> out;
  out.reserve(live_edges_);
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i]) out.push_back(static_cast<EdgeId>(i));
  return out;
}

}  // namespace kgforge::graph
