#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kgforge/graph/property_graph.hpp"
#include "kgforge/linkpred/config.hpp"
#include "kgforge/linkpred/forest.hpp"
#include "kgforge/linkpred/learning_graph.hpp"
#include "kgforge/linkpred/negatives.hpp"

namespace kgforge::linkpred {

struct Confusion {
  std::size_t tp = 0, fn = 0, tn = 0, fp = 0;
};
Confusion confusion(std::span<const double> scores, std::span<const std::uint8_t> labels, double threshold = 0.5);
// (TPR + TNR) / 2. Throws EmptyTestSet if either class is absent.
double balanced_accuracy(const Confusion& c);

// Node embeddings for the configured method, trained on g.
Embedding embed(const LearningGraph& g, const EmbeddingConfig& config);

// Per-node multimodal features: 3-mer profile of Sequence (64) followed by a
// 32-bucket hash of Description (falling back to Label). Missing data -> zeros.
struct NodeFeatures {
  std::size_t dim = 0;
  std::vector<float> data;  // node_count x dim
  std::span<const float> row(std::uint32_t u) const { return {data.data() + std::size_t{u} * dim, dim}; }
};
NodeFeatures multimodal_features(const graph::PropertyGraph& g, const LearningGraph& lg);

// Concatenation [emb(s), emb(t), feat(s), feat(t)]; features may be null.
void edge_features(const Embedding& emb, const NodeFeatures* features, NodePair p, std::vector<float>& out);

struct HoldoutOutcome {
  double balanced_accuracy = 0;
  double control_accuracy = -1;  // shuffled-label forest, when requested
  Confusion confusion;
  std::size_t train_positives = 0, train_negatives = 0, test_positives = 0, test_negatives = 0;
};

struct EvalResult {
  std::string model;
  std::string edge;  // "Source-Target" or "Source-predicate-Target"
  Task task = Task::Hom;
  std::vector<HoldoutOutcome> holdouts;
  double mean = 0;
  double stddev = 0;  // sample standard deviation
  double control_mean = -1;
};

struct EvalOptions {
  std::uint64_t seed = 42;
  bool with_control = false;  // also train on shuffled labels
  unsigned jobs = 1;          // holdouts in parallel
};

// Throws CategoryNotFound if no edge matches the task's category, and
// EmptyTestSet if no holdout has test positives.
EvalResult evaluate(const graph::PropertyGraph& g, const TaskSpec& task, const EmbeddingConfig& embedding,
                    const ForestConfig& forest, const SplitSpec& split, const EvalOptions& options = {});

double mean(std::span<const double> xs);
double sample_stddev(std::span<const double> xs);

}  // namespace kgforge::linkpred
