#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "kgforge/linkpred/learning_graph.hpp"

namespace kgforge::linkpred {

using NodePair = std::pair<std::uint32_t, std::uint32_t>;

struct NegativeSpec {
  std::size_t count = 1;
  bool scale_free = true;  // endpoint weight = degree, else uniform
  std::uint64_t seed = 42;
  // Optional endpoint pools (e.g. all miRNA x all Disease). Empty = any node.
  std::vector<std::uint32_t> sources;
  std::vector<std::uint32_t> targets;
  // Extra pairs to avoid (unordered), e.g. negatives already used elsewhere.
  const std::set<NodePair>* exclude = nullptr;
};

// Pairs not joined by any edge of g (either direction), without self pairs
// or duplicates. Pairs are returned as (source, target) drawn from the pools.
// Throws ExhaustedSpace when fewer than `count` candidates exist.
std::vector<NodePair> sample_negatives(const LearningGraph& g, const NegativeSpec& spec);

inline NodePair unordered(NodePair p) { return p.first < p.second ? p : NodePair{p.second, p.first}; }

}  // namespace kgforge::linkpred
