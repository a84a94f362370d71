#include "kgforge/linkpred/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kgforge/common/error.hpp"
#include "kgforge/common/parallel.hpp"
#include "kgforge/common/rng.hpp"
#include "kgforge/common/text.hpp"

namespace kgforge::linkpred {

void Dataset::add(std::span<const float> row, std::uint8_t label) {
  if (features == 0 && y.empty()) features = row.size();
  if (row.size() != features) throw Error(Errc::InvalidValue, "feature row width mismatch");
  x.insert(x.end(), row.begin(), row.end());
  y.push_back(label);
}

double gini(std::size_t positives, std::size_t total) noexcept {
  if (total == 0) return 0;
  const double p = static_cast<double>(positives) / static_cast<double>(total);
  return 2 * p * (1 - p);
}

namespace {

struct Split {
  std::int32_t feature = -1;
  float threshold = 0;
  double score = 0;  // weighted child impurity
};

}  // namespace

void DecisionTree::fit(const Dataset& data, std::vector<std::uint32_t> samples, std::size_t max_depth,
                       std::size_t max_features, std::size_t min_samples_split, std::uint64_t seed) {
  nodes_.clear();
  if (samples.empty()) {
    nodes_.push_back(Node{});
    return;
  }
  Rng rng(seed);
  const std::size_t d = data.features;
  std::vector<std::uint32_t> feature_ids(d);
  std::iota(feature_ids.begin(), feature_ids.end(), 0u);
  std::vector<std::pair<float, std::uint8_t>> column;

  struct Work {
    std::uint32_t node;
    std::size_t begin, end, depth;
  };
  std::vector<Work> stack;
  nodes_.push_back(Node{});
  stack.push_back({0, 0, samples.size(), 0});
  while (!stack.empty()) {
    const Work w = stack.back();
    stack.pop_back();
    const std::size_t n = w.end - w.begin;
    std::size_t pos = 0;
    for (std::size_t i = w.begin; i < w.end; ++i) pos += data.y[samples[i]];
    nodes_[w.node].positive = static_cast<double>(pos) / static_cast<double>(n);
    if (pos == 0 || pos == n || w.depth >= max_depth || n < min_samples_split) continue;

    // Try features in random order; keep going past max_features only while
    // no valid split has been found (as CART implementations usually do).
    for (std::size_t i = 0; i < d; ++i) std::swap(feature_ids[i], feature_ids[i + rng.below(d - i)]);
    Split best;
    best.score = gini(pos, n);
    bool found = false;
    for (std::size_t fi = 0; fi < d; ++fi) {
      if (fi >= max_features && found) break;
      const auto f = feature_ids[fi];
      column.clear();
      for (std::size_t i = w.begin; i < w.end; ++i)
        column.emplace_back(data.x[samples[i] * d + f], data.y[samples[i]]);
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (column.front().first == column.back().first) continue;
      std::size_t left_pos = 0;
      for (std::size_t i = 1; i < n; ++i) {
        left_pos += column[i - 1].second;
        if (column[i].first == column[i - 1].first) continue;
        const double score = (static_cast<double>(i) * gini(left_pos, i) +
                              static_cast<double>(n - i) * gini(pos - left_pos, n - i)) /
                             static_cast<double>(n);
        if (!found || score < best.score) {
          found = true;
          best.score = score;
          best.feature = static_cast<std::int32_t>(f);
          const float lo = column[i - 1].first, hi = column[i].first;
          best.threshold = lo + (hi - lo) / 2;
          if (!(best.threshold > lo) || best.threshold >= hi) best.threshold = lo;
        }
      }
    }
    if (!found) continue;
    auto mid = std::partition(samples.begin() + static_cast<std::ptrdiff_t>(w.begin),
                              samples.begin() + static_cast<std::ptrdiff_t>(w.end), [&](std::uint32_t s) {
                                return data.x[s * d + static_cast<std::size_t>(best.feature)] <= best.threshold;
                              });
    const auto m = static_cast<std::size_t>(mid - samples.begin());
    if (m == w.begin || m == w.end) continue;
    const auto left = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(Node{});
    nodes_.push_back(Node{});
    auto& node = nodes_[w.node];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = left;
    node.right = left + 1;
    stack.push_back({left + 1, m, w.end, w.depth + 1});
    stack.push_back({left, w.begin, m, w.depth + 1});
  }
}

double DecisionTree::predict(std::span<const float> x) const {
  std::uint32_t i = 0;
  while (nodes_[i].feature >= 0)
    i = x[static_cast<std::size_t>(nodes_[i].feature)] <= nodes_[i].threshold ? nodes_[i].left : nodes_[i].right;
  return nodes_[i].positive;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  std::size_t best = 0;
  while (!stack.empty()) {
    auto [i, dep] = stack.back();
    stack.pop_back();
    best = std::max(best, dep);
    if (nodes_[i].feature >= 0) {
      stack.emplace_back(nodes_[i].left, dep + 1);
      stack.emplace_back(nodes_[i].right, dep + 1);
    }
  }
  return best;
}

void RandomForest::fit(const Dataset& data, const ForestConfig& config) {
  config.validate();
  if (data.size() == 0) throw Error(Errc::InvalidValue, "empty training set");
  const std::size_t mtry =
      config.max_features ? std::min(*config.max_features, data.features)
                          : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(double(data.features))));
  trees_.assign(config.n_estimators, DecisionTree{});
  parallel_for(config.n_estimators, config.jobs, [&](std::size_t t) {
    const auto seed = text::mix_seed(config.seed, t);
    Rng rng(seed);
    std::vector<std::uint32_t> samples(data.size());
    if (config.bootstrap)
      for (auto& s : samples) s = static_cast<std::uint32_t>(rng.below(data.size()));
    else
      std::iota(samples.begin(), samples.end(), 0u);
    trees_[t].fit(data, std::move(samples), config.max_depth, mtry, config.min_samples_split, rng.next());
  });
}

double RandomForest::predict_proba(std::span<const float> x) const {
  double s = 0;
  for (const auto& t : trees_) s += t.predict(x);
  return trees_.empty() ? 0.0 : s / static_cast<double>(trees_.size());
}

std::vector<double> RandomForest::predict_proba(const Dataset& data) const {
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = predict_proba(data.row(i));
  return out;
}

}  // namespace kgforge::linkpred
