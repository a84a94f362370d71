#include "kgforge/linkpred/transe.hpp"

#include <algorithm>
#include <cmath>

#include "kgforge/common/error.hpp"
#include "kgforge/common/rng.hpp"
#include "kgforge/common/text.hpp"
#include "kgforge/simd/vector_ops.hpp"

namespace kgforge::linkpred {

namespace {

double dist(const std::vector<double>& h, const std::vector<double>& r, const std::vector<double>& t, Norm norm) {
  double s = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = h[i] + r[i] - t[i];
    s += norm == Norm::L1 ? std::abs(x) : x * x;
  }
  return norm == Norm::L1 ? s : std::sqrt(s);
}

// d/dx of the distance w.r.t. x = h + r - t
std::vector<double> dist_grad(const std::vector<double>& h, const std::vector<double>& r, const std::vector<double>& t,
                              Norm norm) {
  std::vector<double> g(h.size());
  const double d = dist(h, r, t, norm);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = h[i] + r[i] - t[i];
    if (norm == Norm::L1)
      g[i] = x > 0 ? 1.0 : x < 0 ? -1.0 : 0.0;
    else
      g[i] = d > 0 ? x / d : 0.0;
  }
  return g;
}

void normalize(std::span<float> v) {
  const float n = std::sqrt(simd::squared_norm(v));
  if (n > 0) simd::scale(1.0f / n, v);
}

}  // namespace

double transe_distance(std::span<const float> h, std::span<const float> r, std::span<const float> t, Norm norm) {
  std::vector<float> x(h.size());
  simd::add_sub(h, r, t, x);
  if (norm == Norm::L1) return simd::l1_norm(x);
  return std::sqrt(static_cast<double>(simd::squared_norm(x)));
}

double transe_pair_loss(const TransEPair& x, double margin, Norm norm) {
  return std::max(0.0, margin + dist(x.h, x.r, x.t, norm) - dist(x.h2, x.r, x.t2, norm));
}

TransEPair transe_pair_gradient(const TransEPair& x, double margin, Norm norm) {
  const std::size_t d = x.h.size();
  TransEPair g{std::vector<double>(d), std::vector<double>(d), std::vector<double>(d), std::vector<double>(d),
               std::vector<double>(d)};
  if (transe_pair_loss(x, margin, norm) <= 0) return g;
  const auto gp = dist_grad(x.h, x.r, x.t, norm);
  const auto gn = dist_grad(x.h2, x.r, x.t2, norm);
  for (std::size_t i = 0; i < d; ++i) {
    g.h[i] = gp[i];
    g.t[i] = -gp[i];
    g.h2[i] = -gn[i];
    g.t2[i] = gn[i];
    g.r[i] = gp[i] - gn[i];
  }
  return g;
}

TransEModel train_transe(std::span<const TypedEdge> triples, std::size_t entities, std::size_t relations,
                         const EmbeddingConfig& config) {
  config.validate();
  if (triples.empty()) throw Error(Errc::NoEdges, "TransE needs at least one triple");
  if (entities < 2) throw Error(Errc::GraphTooSmall, "TransE needs at least two entities");
  const std::size_t d = config.dimensions;
  TransEModel m{Embedding(entities, d), Embedding(relations, d), {}};
  Rng rng(text::mix_seed(config.seed, 0x7472616e));
  const double bound = 6.0 / std::sqrt(static_cast<double>(d));
  for (auto& x : m.relations.data) x = static_cast<float>(rng.uniform(-bound, bound));
  for (std::size_t r = 0; r < relations; ++r) normalize(m.relations.row(r));
  for (auto& x : m.entities.data) x = static_cast<float>(rng.uniform(-bound, bound));
  for (std::size_t e = 0; e < entities; ++e) normalize(m.entities.row(e));

  std::vector<std::size_t> order(triples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto lr = static_cast<float>(config.learning_rate);
  std::vector<float> xp(d), xn(d), gp(d), gn(d);

  auto grad_into = [&](const std::vector<float>& x, std::vector<float>& g) {
    if (config.norm == Norm::L1) {
      for (std::size_t i = 0; i < d; ++i) g[i] = x[i] > 0 ? 1.0f : x[i] < 0 ? -1.0f : 0.0f;
    } else {
      const float n = std::sqrt(simd::squared_norm(x));
      for (std::size_t i = 0; i < d; ++i) g[i] = n > 0 ? x[i] / n : 0.0f;
    }
  };

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order.begin(), order.end());
    double loss = 0;
    for (auto idx : order) {
      const auto& tr = triples[idx];
      std::uint32_t h2 = tr.src, t2 = tr.dst;
      const bool corrupt_head = rng.coin();
      do {
        const auto e = static_cast<std::uint32_t>(rng.below(entities));
        if (corrupt_head)
          h2 = e;
        else
          t2 = e;
      } while ((corrupt_head ? h2 == tr.src : t2 == tr.dst));

      auto h = m.entities.row(tr.src), t = m.entities.row(tr.dst), r = m.relations.row(tr.rel);
      auto hn = m.entities.row(h2), tn = m.entities.row(t2);
      simd::add_sub(h, r, t, xp);
      simd::add_sub(hn, r, tn, xn);
      const double dp = config.norm == Norm::L1 ? simd::l1_norm(xp) : std::sqrt(double(simd::squared_norm(xp)));
      const double dn = config.norm == Norm::L1 ? simd::l1_norm(xn) : std::sqrt(double(simd::squared_norm(xn)));
      const double l = config.margin + dp - dn;
      if (l <= 0) continue;
      loss += l;
      grad_into(xp, gp);
      grad_into(xn, gn);
      simd::axpy(-lr, gp, h);
      simd::axpy(lr, gp, t);
      simd::axpy(lr, gn, hn);
      simd::axpy(-lr, gn, tn);
      simd::axpy(-lr, gp, r);
      simd::axpy(lr, gn, r);
      normalize(h);
      normalize(t);
      normalize(hn);
      normalize(tn);
    }
    for (std::size_t e = 0; e < entities; ++e) normalize(m.entities.row(e));
    m.epoch_loss.push_back(loss / static_cast<double>(triples.size()));
  }
  return m;
}

}  // namespace kgforge::linkpred
