#include "kgforge/prune/isomorphism.hpp"

#include <algorithm>
#include <map>

#include "kgforge/common/error.hpp"

namespace kgforge::prune {

IsoSignature signature_of(const graph::PropertyGraph& g, graph::NodeHandle h) {
  IsoSignature s;
  const auto& n = g.node(h);
  s.labels = n.labels;
  std::sort(s.labels.begin(), s.labels.end());
  for (auto id : g.out_edges(h)) {
    const auto& e = g.edge(id);
    s.adjacency.emplace_back(0, e.predicate, e.dst.ordinal);
  }
  for (auto id : g.in_edges(h)) {
    const auto& e = g.edge(id);
    s.adjacency.emplace_back(1, e.predicate, e.src.ordinal);
  }
  std::sort(s.adjacency.begin(), s.adjacency.end());
  return s;
}

std::vector<IsoGroup> find_isomorphic_groups(const graph::PropertyGraph& g) {
  if (!g.frozen()) throw Error(Errc::NotFrozen, "isomorphic groups are computed on frozen graphs");
  std::map<IsoSignature, std::vector<graph::NodeHandle>> buckets;
  for (auto h : g.node_handles()) {
    if (g.out_edges(h).empty() && g.in_edges(h).empty()) continue;
    buckets[signature_of(g, h)].push_back(h);
  }
  std::vector<IsoGroup> groups;
  for (auto& [sig, members] : buckets)
    if (members.size() >= 2) groups.push_back(IsoGroup{std::move(members), std::nullopt, false});
  std::sort(groups.begin(), groups.end(),
            [](const IsoGroup& a, const IsoGroup& b) { return a.members.front() < b.members.front(); });
  return groups;
}

}  // namespace kgforge::prune
