#pragma once

#include <vector>

#include "kgforge/linkpred/config.hpp"
#include "kgforge/linkpred/learning_graph.hpp"

namespace kgforge::linkpred {

struct LineModel {
  Embedding vertex;
  Embedding context;  // second order only
  std::vector<double> epoch_loss;
};

// LINE with negative sampling. Each epoch draws 2 * walks_per_node samples
// per undirected edge. Throws NoEdges on an empty edge set.
LineModel train_line(const LearningGraph& g, const EmbeddingConfig& config);

}  // namespace kgforge::linkpred
