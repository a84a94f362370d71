#include "kgforge/prune/pruning.hpp"

#include <algorithm>
#include <sstream>

#include "kgforge/common/error.hpp"
#include "kgforge/common/parallel.hpp"
#include "kgforge/common/text.hpp"

namespace kgforge::prune {

const std::array<const char*, kBinCount> kBinLabels = {">90", "90-80", "80-70", "70-60", "60-50", "<50"};

PrunePolicy PrunePolicy::parse(std::string_view text) {
  if (text == "all") return all();
  if (text == "above_median") return above_median();
  constexpr std::string_view prefix = "above_threshold:";
  if (text.starts_with(prefix)) {
    auto t = text::parse_double(text.substr(prefix.size()));
    if (t && *t >= 0 && *t <= 100) return above_threshold(*t);
  }
  throw Error(Errc::InvalidParams, "unknown pruning policy '" + std::string(text) + "'");
}

std::string PrunePolicy::name() const {
  switch (kind) {
    case Kind::All: return "all";
    case Kind::AboveMedian: return "above_median";
    case Kind::AboveThreshold: return "above_threshold:" + text::format_double(threshold);
  }
  return "";
}

std::size_t bin_of(double p) {
  if (p > 90) return 0;
  if (p > 80) return 1;
  if (p > 70) return 2;
  if (p > 60) return 3;
  if (p > 50) return 4;
  return 5;
}

namespace {

const std::string* sequence_of(const graph::PropertyGraph& g, graph::NodeHandle h) {
  const auto* v = g.node(h).properties.find("Sequence");
  if (v == nullptr || v->size() != 1) return nullptr;
  return &v->front();
}

}  // namespace

IsoGroup score_group(const graph::PropertyGraph& g, IsoGroup group, const AlignmentParams& params) {
  group.scored = false;
  group.mean_alignment.reset();
  std::vector<const std::string*> seqs;
  for (auto h : group.members) {
    const auto* s = sequence_of(g, h);
    if (s == nullptr) return group;
    seqs.push_back(s);
  }
  double sum = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < seqs.size(); ++i)
    for (std::size_t j = i + 1; j < seqs.size(); ++j) {
      sum += needleman_wunsch(*seqs[i], *seqs[j], params).percent_identity;
      ++pairs;
    }
  group.mean_alignment = sum / static_cast<double>(pairs);
  group.scored = true;
  return group;
}

std::vector<IsoGroup> score_groups(const graph::PropertyGraph& g, std::vector<IsoGroup> groups,
                                   const AlignmentParams& params, unsigned jobs) {
  params.validate();
  parallel_for(groups.size(), jobs, [&](std::size_t i) { groups[i] = score_group(g, std::move(groups[i]), params); });
  return groups;
}

ScoreHistogram score_histogram(std::span<const IsoGroup> groups) {
  ScoreHistogram h;
  std::vector<double> scores;
  for (const auto& grp : groups) {
    if (!grp.scored || !grp.mean_alignment) continue;
    auto b = bin_of(*grp.mean_alignment);
    ++h.groups[b];
    h.sequences[b] += grp.members.size();
    scores.push_back(*grp.mean_alignment);
  }
  h.scored = scores.size();
  if (!scores.empty()) {
    std::sort(scores.begin(), scores.end());
    h.median = scores[(scores.size() - 1) / 2];
  }
  return h;
}

std::vector<const IsoGroup*> select_groups(std::span<const IsoGroup> groups, const PrunePolicy& policy) {
  std::vector<const IsoGroup*> out;
  std::optional<double> median;
  if (policy.kind == PrunePolicy::Kind::AboveMedian) median = score_histogram(groups).median;
  for (const auto& grp : groups) {
    switch (policy.kind) {
      case PrunePolicy::Kind::All:
        out.push_back(&grp);
        break;
      case PrunePolicy::Kind::AboveMedian:
        if (grp.scored && median && *grp.mean_alignment > *median) out.push_back(&grp);
        break;
      case PrunePolicy::Kind::AboveThreshold:
        if (grp.scored && *grp.mean_alignment > policy.threshold) out.push_back(&grp);
        break;
    }
  }
  return out;
}

namespace {

std::size_t collapse_into(graph::PropertyGraph& g, std::span<const IsoGroup* const> selected) {
  std::size_t removed = 0;
  for (const auto* grp : selected) {
    auto rep = *std::min_element(grp->members.begin(), grp->members.end(),
                                 [&](graph::NodeHandle a, graph::NodeHandle b) {
                                   return g.node(a).curie < g.node(b).curie;
                                 });
    std::vector<graph::NodeHandle> absorbed;
    for (auto h : grp->members)
      if (h != rep) absorbed.push_back(h);
    g.merge_nodes(rep, absorbed);
    removed += absorbed.size();
  }
  return removed;
}

}  // namespace

PruneResult collapse_groups(const graph::PropertyGraph& g, std::span<const IsoGroup> groups, const PrunePolicy& policy) {
  if (!g.frozen()) throw Error(Errc::NotFrozen, "pruning requires a frozen graph");
  PruneResult r{g.thawed_copy(), {}};
  auto& rep = r.report;
  rep.policy = policy.name();
  rep.groups_found = groups.size();
  rep.histogram = score_histogram(groups);
  rep.groups_scored = rep.histogram.scored;
  rep.nodes_before = g.node_count();
  rep.edges_before = g.edge_count();
  auto selected = select_groups(groups, policy);
  rep.groups_collapsed = selected.size();
  rep.nodes_removed = collapse_into(r.graph, selected);
  rep.rounds = 1;
  r.graph.freeze();
  rep.nodes_after = r.graph.node_count();
  rep.edges_after = r.graph.edge_count();
  return r;
}

PruneResult prune(const graph::PropertyGraph& g, const PrunePolicy& policy, const AlignmentParams& params,
                  unsigned jobs) {
  auto groups = score_groups(g, find_isomorphic_groups(g), params, jobs);
  PruneResult r = collapse_groups(g, groups, policy);
  if (policy.kind != PrunePolicy::Kind::All) return r;
  // Merging can make former neighbors indistinguishable; repeat until stable.
  const std::size_t max_rounds = std::max<std::size_t>(1, g.node_count());
  while (r.report.rounds < max_rounds) {
    auto next = find_isomorphic_groups(r.graph);
    if (next.empty()) break;
    auto step = collapse_groups(r.graph, next, policy);
    r.graph = std::move(step.graph);
    r.report.groups_collapsed += step.report.groups_collapsed;
    r.report.nodes_removed += step.report.nodes_removed;
    r.report.nodes_after = step.report.nodes_after;
    r.report.edges_after = step.report.edges_after;
    ++r.report.rounds;
  }
  return r;
}

nlohmann::ordered_json to_json(const PruneReport& report) {
  nlohmann::ordered_json bins = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < kBinCount; ++i)
    bins.push_back({{"bin", kBinLabels[i]}, {"groups", report.histogram.groups[i]},
                    {"sequences", report.histogram.sequences[i]}});
  nlohmann::ordered_json j;
  j["policy"] = report.policy;
  j["groups_found"] = report.groups_found;
  j["groups_scored"] = report.groups_scored;
  j["histogram"] = bins;
  if (report.histogram.median)
    j["median"] = *report.histogram.median;
  else
    j["median"] = nullptr;
  j["median_defined"] = report.histogram.median.has_value();
  j["groups_collapsed"] = report.groups_collapsed;
  j["nodes_removed"] = report.nodes_removed;
  j["nodes_before"] = report.nodes_before;
  j["nodes_after"] = report.nodes_after;
  j["edges_before"] = report.edges_before;
  j["edges_after"] = report.edges_after;
  j["rounds"] = report.rounds;
  return j;
}

std::string format_histogram_table(const ScoreHistogram& h) {
  std::ostringstream os;
  os << "Alignment score (%)\tGroups\tSeq.\n";
  std::size_t groups = 0, seqs = 0;
  for (std::size_t i = 0; i < kBinCount; ++i) {
    os << kBinLabels[i] << '\t' << h.groups[i] << '\t' << h.sequences[i] << '\n';
    groups += h.groups[i];
    seqs += h.sequences[i];
  }
  os << "Total\t" << groups << '\t' << seqs << '\n';
  return os.str();
}

}  // namespace kgforge::prune
