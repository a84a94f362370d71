#include "kgforge/linkpred/walks.hpp"

#include "kgforge/common/parallel.hpp"
#include "kgforge/common/rng.hpp"
#include "kgforge/common/text.hpp"

namespace kgforge::linkpred {

std::uint32_t next_hop(const LearningGraph& g, std::uint32_t prev, std::uint32_t cur, double p, double q,
                       double u01, bool first_step) {
  auto nbrs = g.neighbors(cur);
  if (first_step || (p == 1.0 && q == 1.0)) {
    auto i = static_cast<std::size_t>(u01 * static_cast<double>(nbrs.size()));
    return nbrs[std::min(i, nbrs.size() - 1)];
  }
  const double wp = 1.0 / p, wq = 1.0 / q;
  thread_local std::vector<double> weights;
  weights.resize(nbrs.size());
  double total = 0;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const auto x = nbrs[i];
    const double w = x == prev ? wp : g.adjacent(prev, x) ? 1.0 : wq;
    total += w;
    weights[i] = total;
  }
  if (!(total > 0)) {
    auto i = static_cast<std::size_t>(u01 * static_cast<double>(nbrs.size()));
    return nbrs[std::min(i, nbrs.size() - 1)];
  }
  const double target = u01 * total;
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    if (target < weights[i]) return nbrs[i];
  return nbrs.back();
}

WalkCorpus generate_walks(const LearningGraph& g, const EmbeddingConfig& config) {
  config.validate();
  const std::size_t n = g.node_count();
  const std::size_t total = n * config.walks_per_node;
  std::vector<std::vector<std::uint32_t>> walks(total);
  parallel_for(total, config.jobs, [&](std::size_t w) {
    const auto start = static_cast<std::uint32_t>(w % n);
    if (g.degree(start) == 0) return;
    Rng rng(text::mix_seed(config.seed, w));
    auto& walk = walks[w];
    walk.reserve(config.walk_length);
    walk.push_back(start);
    while (walk.size() < config.walk_length) {
      const auto cur = walk.back();
      const auto prev = walk.size() >= 2 ? walk[walk.size() - 2] : cur;
      walk.push_back(next_hop(g, prev, cur, config.p, config.q, rng.uniform(), walk.size() == 1));
    }
  });
  WalkCorpus corpus;
  for (auto& w : walks) {
    if (w.empty())
      ++corpus.isolated_skipped;
    else
      corpus.walks.push_back(std::move(w));
  }
  return corpus;
}

}  // namespace kgforge::linkpred
