#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kgforge/graph/property_graph.hpp"
#include "kgforge/prune/alignment.hpp"
#include "kgforge/prune/isomorphism.hpp"

namespace kgforge::prune {

struct PrunePolicy {
  enum class Kind { All, AboveMedian, AboveThreshold };
  Kind kind = Kind::All;
  double threshold = 0;  // percent, AboveThreshold only

  static PrunePolicy all() { return {Kind::All, 0}; }
  static PrunePolicy above_median() { return {Kind::AboveMedian, 0}; }
  static PrunePolicy above_threshold(double t) { return {Kind::AboveThreshold, t}; }
  // "all", "above_median", "above_threshold:<t>"
  static PrunePolicy parse(std::string_view text);
  std::string name() const;
};

// Bins in display order: >90, (80,90], (70,80], (60,70], (50,60], <=50.
inline constexpr std::size_t kBinCount = 6;
extern const std::array<const char*, kBinCount> kBinLabels;
std::size_t bin_of(double percent);

struct ScoreHistogram {
  std::array<std::size_t, kBinCount> groups{};
  std::array<std::size_t, kBinCount> sequences{};  // member count per bin
  std::size_t scored = 0;
  std::optional<double> median;  // lower median, scored groups only
};

struct PruneReport {
  std::string policy;
  std::size_t groups_found = 0;
  std::size_t groups_scored = 0;
  ScoreHistogram histogram;
  std::size_t groups_collapsed = 0;
  std::size_t nodes_removed = 0;  // sum of |g| - 1 over collapsed groups
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  std::size_t rounds = 0;
};

IsoGroup score_group(const graph::PropertyGraph& g, IsoGroup group, const AlignmentParams& params = {});
// Scores every group; results do not depend on jobs.
std::vector<IsoGroup> score_groups(const graph::PropertyGraph& g, std::vector<IsoGroup> groups,
                                   const AlignmentParams& params = {}, unsigned jobs = 1);

ScoreHistogram score_histogram(std::span<const IsoGroup> groups);

// Groups the policy would collapse, in input order.
std::vector<const IsoGroup*> select_groups(std::span<const IsoGroup> groups, const PrunePolicy& policy);

struct PruneResult {
  graph::PropertyGraph graph;  // frozen
  PruneReport report;
};

// Single pass over precomputed (scored) groups.
PruneResult collapse_groups(const graph::PropertyGraph& g, std::span<const IsoGroup> groups, const PrunePolicy& policy);

// find -> score -> collapse. policy=all repeats until no groups remain.
PruneResult prune(const graph::PropertyGraph& g, const PrunePolicy& policy, const AlignmentParams& params = {},
                  unsigned jobs = 1);

nlohmann::ordered_json to_json(const PruneReport& report);
std::string format_histogram_table(const ScoreHistogram& h);

}  // namespace kgforge::prune
