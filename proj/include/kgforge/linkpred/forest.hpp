#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kgforge/linkpred/config.hpp"

namespace kgforge::linkpred {

// Row-major feature matrix with binary labels.
struct Dataset {
  std::size_t features = 0;
  std::vector<float> x;
  std::vector<std::uint8_t> y;

  std::size_t size() const noexcept { return y.size(); }
  std::span<const float> row(std::size_t i) const { return {x.data() + i * features, features}; }
  void add(std::span<const float> row, std::uint8_t label);
};

class DecisionTree {
 public:
  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf
    float threshold = 0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    double positive = 0;  // leaf probability of class 1
  };

  // Gini CART on the given sample indices (duplicates allowed).
  void fit(const Dataset& data, std::vector<std::uint32_t> samples, std::size_t max_depth, std::size_t max_features,
           std::size_t min_samples_split, std::uint64_t seed);
  double predict(std::span<const float> x) const;
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t depth() const;

 private:
  std::vector<Node> nodes_;
};

class RandomForest {
 public:
  void fit(const Dataset& data, const ForestConfig& config);
  // Mean leaf probability of class 1.
  double predict_proba(std::span<const float> x) const;
  std::vector<double> predict_proba(const Dataset& data) const;
  std::size_t tree_count() const noexcept { return trees_.size(); }

 private:
  std::vector<DecisionTree> trees_;
};

double gini(std::size_t positives, std::size_t total) noexcept;

}  // namespace kgforge::linkpred
