#include "kgforge/linkpred/skipgram.hpp"

#include <algorithm>
#include <cmath>

#include "kgforge/common/error.hpp"
#include "kgforge/common/parallel.hpp"
#include "kgforge/common/rng.hpp"
#include "kgforge/common/text.hpp"
#include "kgforge/simd/vector_ops.hpp"

namespace kgforge::linkpred {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

float fast_sigmoid(float x) { return 1.0f / (1.0f + std::exp(-std::clamp(x, -30.0f, 30.0f))); }

// log(sigmoid(x)) without overflow
double log_sigmoid(double x) { return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

double ddot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

NoiseTable::NoiseTable(std::span<const double> counts, std::size_t size) {
  double total = 0;
  for (double c : counts) total += std::pow(c, 0.75);
  if (!(total > 0)) return;
  table_.reserve(size);
  double cum = 0;
  std::uint32_t word = 0;
  for (std::size_t i = 0; i < size && word < counts.size(); ++i) {
    while (word < counts.size() && (i + 0.5) / static_cast<double>(size) >= (cum + std::pow(counts[word], 0.75)) / total) {
      cum += std::pow(counts[word], 0.75);
      ++word;
    }
    if (word >= counts.size()) word = static_cast<std::uint32_t>(counts.size() - 1);
    table_.push_back(word);
  }
}

double sgns_loss(std::span<const double> center, std::span<const double> positive,
                 const std::vector<std::vector<double>>& negatives) {
  double loss = -log_sigmoid(ddot(center, positive));
  for (const auto& n : negatives) loss -= log_sigmoid(-ddot(center, n));
  return loss;
}

SgnsGradient sgns_gradient(std::span<const double> center, std::span<const double> positive,
                           const std::vector<std::vector<double>>& negatives) {
  const std::size_t d = center.size();
  SgnsGradient g{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0), {}};
  const double gp = sigmoid(ddot(center, positive)) - 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    g.center[i] += gp * positive[i];
    g.positive[i] = gp * center[i];
  }
  for (const auto& n : negatives) {
    const double gn = sigmoid(ddot(center, n));
    std::vector<double> dn(d);
    for (std::size_t i = 0; i < d; ++i) {
      g.center[i] += gn * n[i];
      dn[i] = gn * center[i];
    }
    g.negatives.push_back(std::move(dn));
  }
  return g;
}

SkipGramModel init_skipgram(std::size_t vocab, const EmbeddingConfig& config) {
  config.validate();
  SkipGramModel m{Embedding(vocab, config.dimensions), Embedding(vocab, config.dimensions), {}};
  Rng rng(text::mix_seed(config.seed, 0x5347));
  const double half = 0.5 / static_cast<double>(config.dimensions);
  for (auto& x : m.input.data) x = static_cast<float>(rng.uniform(-half, half));
  return m;
}

SkipGramModel train_skipgram(const WalkCorpus& corpus, std::size_t vocab, const EmbeddingConfig& config) {
  SkipGramModel m = init_skipgram(vocab, config);
  if (config.epochs == 0) return m;
  if (corpus.walks.empty()) throw Error(Errc::NoEdges, "empty walk corpus");

  std::vector<double> counts(vocab, 0.0);
  for (const auto& w : corpus.walks)
    for (auto v : w) counts.at(v) += 1;
  // Sized to the vocabulary so lookups stay in cache.
  const NoiseTable noise(counts, std::clamp<std::size_t>(vocab * 64, 1u << 12, 1u << 20));

  const std::size_t d = config.dimensions;
  const std::size_t walks = corpus.walks.size();
  const std::size_t total_steps = config.epochs * walks;
  const auto window = static_cast<std::ptrdiff_t>(config.window);
  const unsigned jobs = config.hogwild ? config.jobs : 1;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::vector<double> walk_loss(walks, 0.0);
    std::vector<std::size_t> walk_pairs(walks, 0);
    parallel_for(walks, jobs, [&](std::size_t wi) {
      const auto& walk = corpus.walks[wi];
      Rng rng(text::mix_seed(config.seed, (epoch + 1) * walks + wi));
      const double progress = static_cast<double>(epoch * walks + wi) / static_cast<double>(total_steps);
      const auto lr = static_cast<float>(config.learning_rate * std::max(1e-4, 1.0 - progress));
      std::vector<float> grad(d);
      double loss = 0, likelihood = 1.0;
      std::size_t pairs = 0;
      const auto len = static_cast<std::ptrdiff_t>(walk.size());
      for (std::ptrdiff_t i = 0; i < len; ++i) {
        const auto center = walk[static_cast<std::size_t>(i)];
        auto in = m.input.row(center);
        for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - window); j <= std::min(len - 1, i + window); ++j) {
          if (j == i) continue;
          const auto ctx = walk[static_cast<std::size_t>(j)];
          std::fill(grad.begin(), grad.end(), 0.0f);
          for (std::size_t k = 0; k <= config.negatives; ++k) {
            std::uint32_t target = ctx;
            float label = 1.0f;
            if (k > 0) {
              target = noise.draw(rng.next());
              if (target == ctx) continue;
              label = 0.0f;
            }
            auto out = m.context.row(target);
            const float s = fast_sigmoid(simd::dot(in, out));
            // -sum(log p) taken as -log(prod p), flushed before underflow.
            likelihood *= std::max(label > 0 ? s : 1.0f - s, 1e-12f);
            if (likelihood < 1e-250) {
              loss -= std::log(likelihood);
              likelihood = 1.0;
            }
            const float g = (label - s) * lr;
            simd::axpy(g, out, grad);
            simd::axpy(g, in, out);
          }
          simd::axpy(1.0f, grad, in);
          ++pairs;
        }
      }
      walk_loss[wi] = loss - std::log(likelihood);
      walk_pairs[wi] = pairs;
    });
    double loss = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < walks; ++i) {
      loss += walk_loss[i];
      pairs += walk_pairs[i];
    }
    m.epoch_loss.push_back(pairs ? loss / static_cast<double>(pairs) : 0.0);
  }
  return m;
}

}  // namespace kgforge::linkpred
