#include "kgforge/linkpred/timesplit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"
#include "kgforge/linkpred/evaluation.hpp"
#include "kgforge/linkpred/negatives.hpp"

namespace kgforge::linkpred {

TimeSplit time_stratified_split(const graph::PropertyGraph& g, const ingest::PmidYearTable& years, int cutoff) {
  const auto ids = g.edge_ids();
  const LearningGraph lg = LearningGraph::from_graph(g);
  TimeSplit s;
  s.cutoff = cutoff;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::optional<int> year;
    if (const auto* pmids = g.edge(ids[i]).properties.find("PubMedID"))
      for (const auto& p : *pmids)
        if (auto y = years.year(p); y && (!year || *y < *year)) year = y;
    if (!year) {
      ++s.undated;
      continue;
    }
    (*year < cutoff ? s.train : s.test).push_back({lg.edges()[i], *year});
  }
  if (s.train.empty() && s.test.empty()) throw Error(Errc::EmptyTestSet, "no edge has a dated PubMedID");
  if (s.test.empty()) throw Error(Errc::EmptyTestSet, "no edge dated at or after " + std::to_string(cutoff));
  return s;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<YearStats> score_distribution_by_year(std::span<const DatedEdge> edges, std::span<const double> scores) {
  std::map<int, std::vector<double>> by_year;
  for (std::size_t i = 0; i < edges.size(); ++i) by_year[edges[i].year].push_back(scores[i]);
  std::vector<YearStats> out;
  for (auto& [year, v] : by_year) {
    YearStats ys;
    ys.year = year;
    ys.count = v.size();
    ys.median = quantile(v, 0.5);
    ys.q1 = quantile(v, 0.25);
    ys.q3 = quantile(v, 0.75);
    ys.fraction_above_half =
        static_cast<double>(std::count_if(v.begin(), v.end(), [](double x) { return x > 0.5; })) /
        static_cast<double>(v.size());
    out.push_back(ys);
  }
  return out;
}

TimeSplitEvaluation evaluate_time_split(const graph::PropertyGraph& g, const ingest::PmidYearTable& years, int cutoff,
                                        const TaskSpec& task, const EmbeddingConfig& embedding,
                                        const ForestConfig& forest, const SplitSpec& sampling, std::uint64_t seed) {
  task.validate();
  TimeSplitEvaluation r;
  r.split = time_stratified_split(g, years, cutoff);
  const LearningGraph full = LearningGraph::from_graph(g);
  std::optional<std::uint32_t> rel;
  if (task.typed()) rel = full.relation_id(*task.predicate);
  auto in_cat = [&](const TypedEdge& e) {
    return full.has_label(e.src, task.source_label) && full.has_label(e.dst, task.target_label) &&
           (!task.typed() || (rel && e.rel == *rel));
  };

  std::vector<TypedEdge> train_edges;
  std::set<NodePair> train_pos;
  for (const auto& d : r.split.train) {
    train_edges.push_back(d.edge);
    if (in_cat(d.edge)) train_pos.insert({d.edge.src, d.edge.dst});
  }
  for (const auto& d : r.split.test)
    if (in_cat(d.edge) && !train_pos.count({d.edge.src, d.edge.dst})) r.scored.push_back(d);
  if (r.scored.empty()) throw Error(Errc::EmptyTestSet, "no post-cutoff edges in the task category");
  if (train_pos.empty()) throw Error(Errc::CategoryNotFound, "no pre-cutoff edges in the task category");

  const LearningGraph train = full.with_edges(std::move(train_edges));
  const Embedding emb = embed(train, embedding);
  const NodeFeatures features = task.multimodal() ? multimodal_features(g, full) : NodeFeatures{};
  const NodeFeatures* fptr = task.multimodal() ? &features : nullptr;

  NegativeSpec ns;
  ns.count = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(sampling.unbalance_rate * double(train_pos.size()))));
  ns.scale_free = sampling.scale_free;
  ns.seed = text::mix_seed(seed, 0x74696d65);
  ns.sources = full.nodes_with_label(task.source_label);
  ns.targets = full.nodes_with_label(task.target_label);
  const auto negatives = sample_negatives(full, ns);

  Dataset data;
  std::vector<float> row;
  for (const auto& p : train_pos) {
    edge_features(emb, fptr, p, row);
    data.add(row, 1);
  }
  for (const auto& p : negatives) {
    edge_features(emb, fptr, p, row);
    data.add(row, 0);
  }
  r.train_positives = train_pos.size();
  r.train_negatives = negatives.size();
  RandomForest rf;
  rf.fit(data, forest);
  for (const auto& d : r.scored) {
    edge_features(emb, fptr, {d.edge.src, d.edge.dst}, row);
    r.scores.push_back(rf.predict_proba(row));
  }
  r.by_year = score_distribution_by_year(r.scored, r.scores);
  r.fraction_above_half = static_cast<double>(std::count_if(r.scores.begin(), r.scores.end(),
                                                            [](double x) { return x > 0.5; })) /
                          static_cast<double>(r.scores.size());
  return r;
}

}  // namespace kgforge::linkpred
