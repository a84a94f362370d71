#include "kgforge/linkpred/line.hpp"

#include <algorithm>
#include <cmath>

#include "kgforge/common/error.hpp"
#include "kgforge/common/rng.hpp"
#include "kgforge/common/text.hpp"
#include "kgforge/linkpred/skipgram.hpp"
#include "kgforge/simd/vector_ops.hpp"

namespace kgforge::linkpred {

namespace {
double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
}  // namespace

LineModel train_line(const LearningGraph& g, const EmbeddingConfig& config) {
  config.validate();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  for (std::uint32_t u = 0; u < g.node_count(); ++u)
    for (auto v : g.neighbors(u)) arcs.emplace_back(u, v);
  if (arcs.empty()) throw Error(Errc::NoEdges, "LINE needs at least one edge");

  const std::size_t n = g.node_count(), d = config.dimensions;
  LineModel m{Embedding(n, d), Embedding(n, d), {}};
  Rng rng(text::mix_seed(config.seed, 0x4c494e45));
  const double half = 0.5 / static_cast<double>(d);
  for (auto& x : m.vertex.data) x = static_cast<float>(rng.uniform(-half, half));
  if (config.line_order == 1) m.context = Embedding();

  std::vector<double> degree(n);
  for (std::uint32_t u = 0; u < n; ++u) degree[u] = static_cast<double>(g.degree(u));
  const NoiseTable noise(degree, std::clamp<std::size_t>(degree.size() * 64, 1u << 12, 1u << 20));

  const std::size_t per_epoch = arcs.size() * std::max<std::size_t>(1, config.walks_per_node);
  const std::size_t total = per_epoch * config.epochs;
  std::vector<float> grad(d);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double loss = 0;
    for (std::size_t s = 0; s < per_epoch; ++s) {
      const double progress = static_cast<double>(epoch * per_epoch + s) / static_cast<double>(total);
      const auto lr = static_cast<float>(config.learning_rate * std::max(1e-4, 1.0 - progress));
      const auto [u, v] = arcs[rng.below(arcs.size())];
      auto src = m.vertex.row(u);
      std::fill(grad.begin(), grad.end(), 0.0f);
      for (std::size_t k = 0; k <= config.negatives; ++k) {
        std::uint32_t target = v;
        float label = 1.0f;
        if (k > 0) {
          target = noise.draw(rng.next());
          if (target == v || target == u) continue;
          label = 0.0f;
        }
        auto dst = config.line_order == 1 ? m.vertex.row(target) : m.context.row(target);
        const double f = simd::dot(src, dst);
        loss -= label > 0 ? std::log(std::max(sigmoid(f), 1e-12)) : std::log(std::max(1.0 - sigmoid(f), 1e-12));
        const auto gr = static_cast<float>((label - sigmoid(f)) * lr);
        simd::axpy(gr, dst, grad);
        simd::axpy(gr, src, dst);
      }
      simd::axpy(1.0f, grad, src);
    }
    m.epoch_loss.push_back(loss / static_cast<double>(per_epoch));
  }
  return m;
}

}  // namespace kgforge::linkpred
