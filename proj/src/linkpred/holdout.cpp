#include "kgforge/linkpred/holdout.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "kgforge/common/error.hpp"
#include "kgforge/common/rng.hpp"
#include "kgforge/common/text.hpp"

namespace kgforge::linkpred {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

std::size_t component_count(const LearningGraph& g) {
  UnionFind uf(g.node_count());
  std::size_t components = g.node_count();
  for (const auto& e : g.edges())
    if (uf.unite(e.src, e.dst)) --components;
  return components;
}

Holdout connected_holdout(const LearningGraph& g, double train_size, std::uint64_t seed) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::size_t>> by_pair;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    by_pair[{std::min(e.src, e.dst), std::max(e.src, e.dst)}].push_back(i);
  }
  std::vector<const std::vector<std::size_t>*> pairs;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> keys;
  for (const auto& [k, v] : by_pair) {
    keys.push_back(k);
    pairs.push_back(&v);
  }
  Rng rng(seed);
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order.begin(), order.end());

  UnionFind uf(g.node_count());
  std::vector<std::size_t> tree, rest;
  for (auto i : order) {
    if (uf.unite(keys[i].first, keys[i].second))
      tree.push_back(i);
    else
      rest.push_back(i);
  }
  const auto want = static_cast<std::size_t>(std::ceil(train_size * static_cast<double>(pairs.size()) - 1e-9));
  const std::size_t extra = want > tree.size() ? std::min(want - tree.size(), rest.size()) : 0;

  std::vector<std::uint8_t> in_train(pairs.size(), 0);
  for (auto i : tree) in_train[i] = 1;
  for (std::size_t k = 0; k < extra; ++k) in_train[rest[k]] = 1;

  std::vector<TypedEdge> train, test;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (auto ei : *pairs[i]) (in_train[i] ? train : test).push_back(g.edges()[ei]);
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  Holdout h{g.with_edges(std::move(train)), std::move(test), tree.size(), false};
  h.test_empty_warning = h.test.empty();
  return h;
}

std::vector<Holdout> split_connected_monte_carlo(const LearningGraph& g, const SplitSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (g.edge_count() < 3) throw Error(Errc::GraphTooSmall, "need at least 3 edges");
  std::vector<Holdout> out;
  for (std::size_t i = 0; i < spec.holdouts; ++i) out.push_back(connected_holdout(g, spec.train_size, text::mix_seed(seed, i)));
  return out;
}

}  // namespace kgforge::linkpred
