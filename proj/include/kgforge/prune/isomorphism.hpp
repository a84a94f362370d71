#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kgforge/graph/property_graph.hpp"

namespace kgforge::prune {

// Node type plus exact neighborhood. Neighbors are raw handles, so two
// adjacent nodes never share a signature.
struct IsoSignature {
  std::vector<std::string> labels;  // sorted
  std::vector<std::tuple<int, std::string, std::uint32_t>> adjacency;  // (0=out|1=in, predicate, neighbor), sorted

  friend auto operator<=>(const IsoSignature&, const IsoSignature&) = default;
};

struct IsoGroup {
  std::vector<graph::NodeHandle> members;  // ascending, size >= 2
  std::optional<double> mean_alignment;    // percent, set iff scored
  bool scored = false;
};

IsoSignature signature_of(const graph::PropertyGraph& g, graph::NodeHandle h);

// Maximal groups (size >= 2) of non-isolated nodes with equal signatures,
// ordered by smallest member.
std::vector<IsoGroup> find_isomorphic_groups(const graph::PropertyGraph& g);

}  // namespace kgforge::prune
