#pragma once

#include <cstdint>
#include <vector>

#include "kgforge/linkpred/config.hpp"
#include "kgforge/linkpred/learning_graph.hpp"

namespace kgforge::linkpred {

struct Holdout {
  LearningGraph train;
  std::vector<TypedEdge> test;  // positives removed from train
  std::size_t spanning_pairs = 0;  // node pairs forced into train
  bool test_empty_warning = false;
};

// Connected Monte Carlo: edges are grouped by unordered node pair; a random
// spanning forest of pairs always stays in train, then the remaining pairs
// are shuffled and split so that train holds ceil(train_size * pairs) pairs
// (or the forest, if larger). Holdout i uses mix_seed(seed, i).
std::vector<Holdout> split_connected_monte_carlo(const LearningGraph& g, const SplitSpec& spec, std::uint64_t seed);

Holdout connected_holdout(const LearningGraph& g, double train_size, std::uint64_t seed);

// Components of the undirected skeleton (isolated nodes count as components).
std::size_t component_count(const LearningGraph& g);

}  // namespace kgforge::linkpred
