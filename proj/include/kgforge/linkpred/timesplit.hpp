#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kgforge/graph/property_graph.hpp"
#include "kgforge/ingest/mapping.hpp"
#include "kgforge/linkpred/config.hpp"
#include "kgforge/linkpred/learning_graph.hpp"

namespace kgforge::linkpred {

struct DatedEdge {
  TypedEdge edge;  // indices into LearningGraph::from_graph(g)
  int year = 0;
};

struct TimeSplit {
  int cutoff = 0;
  std::vector<DatedEdge> train;  // year < cutoff
  std::vector<DatedEdge> test;   // year >= cutoff
  std::size_t undated = 0;       // no PubMedID maps to a year; in neither set
};

// Edge year = earliest year over the edge's PubMedID list.
// Throws EmptyTestSet if nothing is dated or the test side is empty.
TimeSplit time_stratified_split(const graph::PropertyGraph& g, const ingest::PmidYearTable& years, int cutoff);

struct YearStats {
  int year = 0;
  std::size_t count = 0;
  double median = 0, q1 = 0, q3 = 0;  // linear interpolation between order statistics
  double fraction_above_half = 0;
};

// Groups scores[i] under edges[i].year; years without edges are absent.
std::vector<YearStats> score_distribution_by_year(std::span<const DatedEdge> edges, std::span<const double> scores);

double quantile(std::vector<double> values, double q);

struct TimeSplitEvaluation {
  TimeSplit split;
  std::vector<DatedEdge> scored;  // test edges of the task's category
  std::vector<double> scores;
  std::vector<YearStats> by_year;
  double fraction_above_half = 0;
  std::size_t train_positives = 0;
  std::size_t train_negatives = 0;
};

// Embeds the pre-cutoff graph, trains the forest on pre-cutoff category
// edges vs sampled non-edges, then scores post-cutoff category edges.
TimeSplitEvaluation evaluate_time_split(const graph::PropertyGraph& g, const ingest::PmidYearTable& years, int cutoff,
                                        const TaskSpec& task, const EmbeddingConfig& embedding,
                                        const ForestConfig& forest, const SplitSpec& sampling, std::uint64_t seed);

}  // namespace kgforge::linkpred
