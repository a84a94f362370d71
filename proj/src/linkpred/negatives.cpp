#include "kgforge/linkpred/negatives.hpp"

#include <algorithm>
#include <unordered_set>

#include "kgforge/common/error.hpp"
#include "kgforge/common/rng.hpp"

namespace kgforge::linkpred {

namespace {

// Cumulative-weight sampler over a node pool.
class PoolSampler {
 public:
  PoolSampler(const LearningGraph& g, std::vector<std::uint32_t> pool, bool scale_free) : pool_(std::move(pool)) {
    double total = 0;
    for (auto u : pool_) {
      total += scale_free ? static_cast<double>(g.degree(u)) : 1.0;
      cum_.push_back(total);
    }
    if (!(total > 0)) {  // pool without edges: fall back to uniform
      for (std::size_t i = 0; i < pool_.size(); ++i) cum_[i] = static_cast<double>(i + 1);
    }
  }
  std::uint32_t draw(Rng& rng) const {
    const double t = rng.uniform() * cum_.back();
    auto it = std::upper_bound(cum_.begin(), cum_.end(), t);
    if (it == cum_.end()) --it;
    return pool_[static_cast<std::size_t>(it - cum_.begin())];
  }
  // Nodes that can actually be drawn.
  std::vector<std::uint32_t> support() const {
    std::vector<std::uint32_t> s;
    double prev = 0;
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      if (cum_[i] > prev) s.push_back(pool_[i]);
      prev = cum_[i];
    }
    return s;
  }
  bool empty() const noexcept { return pool_.empty(); }

 private:
  std::vector<std::uint32_t> pool_;
  std::vector<double> cum_;
};

std::uint64_t key(NodePair p) {
  p = unordered(p);
  return (std::uint64_t{p.first} << 32) | p.second;
}

}  // namespace

std::vector<NodePair> sample_negatives(const LearningGraph& g, const NegativeSpec& spec) {
  if (spec.count == 0) throw Error(Errc::InvalidConfig, "negative count must be >= 1");
  auto all = [&] {
    std::vector<std::uint32_t> v(g.node_count());
    for (std::uint32_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
  };
  const PoolSampler src(g, spec.sources.empty() ? all() : spec.sources, spec.scale_free);
  const PoolSampler dst(g, spec.targets.empty() ? all() : spec.targets, spec.scale_free);
  if (src.empty() || dst.empty()) throw Error(Errc::ExhaustedSpace, "empty endpoint pool");

  // Exact size of the candidate space (as unordered pairs).
  std::unordered_set<std::uint64_t> space_keys;
  {
    const auto s = src.support(), t = dst.support();
    std::vector<std::uint8_t> in_t(g.node_count(), 0);
    for (auto v : t) in_t[v] = 1;
    std::size_t budget = spec.count;
    for (auto u : s) {
      for (auto v : t) {
        if (u == v || g.adjacent(u, v)) continue;
        const NodePair p{u, v};
        if (spec.exclude && spec.exclude->count(unordered(p))) continue;
        space_keys.insert(key(p));
      }
      if (space_keys.size() >= budget * 4 + 1024) break;  // plenty; skip the exact count
    }
    if (space_keys.size() < spec.count)
      throw Error(Errc::ExhaustedSpace, "only " + std::to_string(space_keys.size()) + " candidate pairs for " +
                                            std::to_string(spec.count) + " negatives");
  }

  Rng rng(spec.seed);
  std::vector<NodePair> out;
  std::unordered_set<std::uint64_t> seen;
  std::size_t attempts = 0;
  const std::size_t max_attempts = 1000 * spec.count + 100000;
  while (out.size() < spec.count) {
    if (++attempts > max_attempts) throw Error(Errc::ExhaustedSpace, "rejection sampling did not converge");
    const NodePair p{src.draw(rng), dst.draw(rng)};
    if (p.first == p.second || g.adjacent(p.first, p.second)) continue;
    if (spec.exclude && spec.exclude->count(unordered(p))) continue;
    if (!seen.insert(key(p)).second) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace kgforge::linkpred
