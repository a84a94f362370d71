#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kgforge/linkpred/config.hpp"
#include "kgforge/linkpred/learning_graph.hpp"
#include "kgforge/linkpred/walks.hpp"

namespace kgforge::linkpred {

struct SkipGramModel {
  Embedding input;    // node embeddings
  Embedding context;  // output vectors
  std::vector<double> epoch_loss;  // mean per (center, context) pair
};

// Skip-gram with negative sampling over a walk corpus. vocab = node count.
SkipGramModel train_skipgram(const WalkCorpus& corpus, std::size_t vocab, const EmbeddingConfig& config);

// Deterministic initial state for the given seed (what zero epochs returns).
SkipGramModel init_skipgram(std::size_t vocab, const EmbeddingConfig& config);

// Per-pair objective  -log s(c.p) - sum_k log s(-c.n_k)  and its gradients.
double sgns_loss(std::span<const double> center, std::span<const double> positive,
                 const std::vector<std::vector<double>>& negatives);

struct SgnsGradient {
  std::vector<double> center;
  std::vector<double> positive;
  std::vector<std::vector<double>> negatives;
};
SgnsGradient sgns_gradient(std::span<const double> center, std::span<const double> positive,
                           const std::vector<std::vector<double>>& negatives);

// Unigram^0.75 sampling table.
class NoiseTable {
 public:
  explicit NoiseTable(std::span<const double> counts, std::size_t size = 1u << 20);
  std::uint32_t draw(std::uint64_t r) const { return table_[r % table_.size()]; }
  bool empty() const noexcept { return table_.empty(); }

 private:
  std::vector<std::uint32_t> table_;
};

}  // namespace kgforge::linkpred
