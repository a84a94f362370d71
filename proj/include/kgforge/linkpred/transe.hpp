#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kgforge/linkpred/config.hpp"
#include "kgforge/linkpred/learning_graph.hpp"

namespace kgforge::linkpred {

struct TransEModel {
  Embedding entities;
  Embedding relations;
  std::vector<double> epoch_loss;  // mean hinge loss per triple
};

// Margin ranking over corrupted triples (head or tail replaced, 50/50).
// Entity vectors are renormalized after each update and at epoch end.
TransEModel train_transe(std::span<const TypedEdge> triples, std::size_t entities, std::size_t relations,
                         const EmbeddingConfig& config);

// d(h + r, t) under the configured norm (not squared).
double transe_distance(std::span<const float> h, std::span<const float> r, std::span<const float> t, Norm norm);

// max(0, margin + d(h+r, t) - d(h2+r, t2)) and its gradients, in double.
struct TransEPair {
  std::vector<double> h, r, t, h2, t2;
};
double transe_pair_loss(const TransEPair& x, double margin, Norm norm);
TransEPair transe_pair_gradient(const TransEPair& x, double margin, Norm norm);

}  // namespace kgforge::linkpred
