#pragma once

#include <cstdint>
#include <vector>

#include "kgforge/linkpred/config.hpp"
#include "kgforge/linkpred/learning_graph.hpp"

namespace kgforge::linkpred {

struct WalkCorpus {
  std::vector<std::vector<std::uint32_t>> walks;
  std::size_t isolated_skipped = 0;  // start nodes without neighbors, per round
};

// Second-order biased walks on the undirected skeleton. Walk i of round r
// starts at node i and uses its own seeded stream, so the corpus does not
// depend on config.jobs.
WalkCorpus generate_walks(const LearningGraph& g, const EmbeddingConfig& config);

// Next hop from `cur` having arrived from `prev` (prev == cur on the first step).
std::uint32_t next_hop(const LearningGraph& g, std::uint32_t prev, std::uint32_t cur, double p, double q,
                       double u01, bool first_step);

}  // namespace kgforge::linkpred
