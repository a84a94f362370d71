#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "kgforge/common/error.hpp"
#include "kgforge/prune/alignment.hpp"
#include "kgforge/prune/isomorphism.hpp"
#include "kgforge/prune/pruning.hpp"
#include "oracles.hpp"

using namespace kgforge;
using namespace kgforge::prune;
using graph::NodeHandle;
using graph::PropertyGraph;

namespace {

std::vector<std::vector<std::uint32_t>> as_ordinals(const std::vector<IsoGroup>& groups) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& g : groups) {
    std::vector<std::uint32_t> m;
    for (auto h : g.members) m.push_back(h.ordinal);
    out.push_back(m);
  }
  return out;
}

// Synthetic scored groups reproducing the reference histogram: per-bin group and
// sequence counts, plus 20 unscored groups (177 found in total).
std::vector<IsoGroup> reference_histogram_groups() {
  const std::array<std::size_t, 6> groups = {19, 47, 42, 36, 11, 2};
  const std::array<std::size_t, 6> seqs = {72, 386, 834, 1182, 153, 5};
  const std::array<double, 6> hi = {100, 90, 80, 70, 60, 50};
  std::vector<IsoGroup> out;
  std::uint32_t next = 0;
  for (std::size_t b = 0; b < 6; ++b) {
    for (std::size_t i = 0; i < groups[b]; ++i) {
      // Spread sequences: base share, remainder to the first groups.
      std::size_t size = seqs[b] / groups[b] + (i < seqs[b] % groups[b] ? 1 : 0);
      IsoGroup g;
      for (std::size_t k = 0; k < size; ++k) g.members.push_back(NodeHandle{next++});
      // Distinct scores strictly inside the bin.
      g.mean_alignment = hi[b] - 9.0 * static_cast<double>(i + 1) / static_cast<double>(groups[b] + 1);
      g.scored = true;
      out.push_back(g);
    }
  }
  for (int i = 0; i < 20; ++i) out.push_back(IsoGroup{{NodeHandle{next++}, NodeHandle{next++}}, std::nullopt, false});
  return out;
}

PropertyGraph pair_sharing_target(bool same_labels) {
  PropertyGraph g;
  auto a = g.add_node({"RNAcentral:URS0000000001", "", {"miRNA"}, {{"Sequence", {"ACGU"}}}});
  auto b = g.add_node({"RNAcentral:URS0000000002", "", {same_labels ? "miRNA" : "tsRNA"}, {{"Sequence", {"ACGU"}}}});
  auto t = g.add_node({"Entrez:1", "", {"Gene"}, {}});
  g.add_edge(a, t, "regulates_activity_of", {{"Source", {"s1"}}});
  g.add_edge(b, t, "regulates_activity_of", {{"Source", {"s2"}}});
  g.freeze();
  return g;
}

}  // namespace

TEST(Alignment, Examples) {
  auto id = needleman_wunsch("ACGU", "ACGU");
  EXPECT_EQ(id.percent_identity, 100.0);
  EXPECT_EQ(id.score, 4);
  auto none = needleman_wunsch("AAAA", "CCCC");
  EXPECT_EQ(none.percent_identity, 0.0);
  EXPECT_EQ(none.score, -4);
  auto one_empty = needleman_wunsch("", "ACG");
  EXPECT_EQ(one_empty.score, -3);
  EXPECT_EQ(one_empty.percent_identity, 0.0);
  EXPECT_THROW(needleman_wunsch("", ""), Error);
  EXPECT_THROW(needleman_wunsch("ACGT", "ACG"), Error);
}

TEST(Alignment, ParamsValidated) {
  EXPECT_THROW(needleman_wunsch("A", "A", {1, 1, -1}), Error);
  EXPECT_THROW(needleman_wunsch("A", "A", {1, -1, 1}), Error);
  EXPECT_NO_THROW(needleman_wunsch("A", "A", {2, -1, -2}));
}

TEST(Alignment, MatchesExhaustiveEnumeration) {
  kgforge::Rng rng(1);
  for (int i = 0; i < 1500; ++i) {
    const auto a = kgtest::random_sequence(rng, rng.below(6));
    auto b = kgtest::random_sequence(rng, rng.below(6));
    if (a.empty() && b.empty()) b = "A";
    AlignmentParams p{1 + static_cast<int>(rng.below(3)), -static_cast<int>(rng.below(3)), -1 - static_cast<int>(rng.below(2))};
    const auto dp = needleman_wunsch(a, b, p);
    const auto brute = kgtest::enumerate_alignments(a, b, p.match, p.mismatch, p.gap);
    ASSERT_EQ(dp.score, brute.score) << a << " / " << b;
    ASSERT_EQ(dp.matches, brute.matches) << a << " / " << b;
    ASSERT_EQ(dp.length, brute.length) << a << " / " << b;
  }
}

TEST(Alignment, SymmetricAndBounded) {
  kgforge::Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    const auto a = kgtest::random_sequence(rng, 1 + rng.below(30), "ACGUN");
    const auto b = rng.uniform() < 0.1 ? a : kgtest::random_sequence(rng, 1 + rng.below(30), "ACGUN");
    const auto ab = needleman_wunsch(a, b), ba = needleman_wunsch(b, a);
    ASSERT_EQ(ab.percent_identity, ba.percent_identity);
    ASSERT_GE(ab.percent_identity, 0.0);
    ASSERT_LE(ab.percent_identity, 100.0);
    ASSERT_EQ(ab.percent_identity == 100.0, a == b);
  }
}

TEST(Alignment, SharedPrefixIdentityIsExact) {
  // A^n + tail letters: the ungapped alignment is optimal.
  for (std::size_t n = 0; n <= 20; ++n) {
    const auto a = std::string(n, 'A') + std::string(20 - n, 'C');
    const auto b = std::string(n, 'A') + std::string(20 - n, 'G');
    EXPECT_DOUBLE_EQ(needleman_wunsch(a, b).percent_identity, 100.0 * static_cast<double>(n) / 20.0) << n;
  }
}

TEST(Isomorphism, PairSharingTarget) {
  auto g = pair_sharing_target(true);
  auto groups = find_isomorphic_groups(g);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].members.size(), 2u);
  EXPECT_TRUE(find_isomorphic_groups(pair_sharing_target(false)).empty());
}

TEST(Isomorphism, MutuallyAdjacentNodesNotGrouped) {
  PropertyGraph g;
  auto a = g.add_node({"A:1", "", {"miRNA"}, {}}), b = g.add_node({"A:2", "", {"miRNA"}, {}});
  g.add_edge(a, b, "p");
  g.add_edge(b, a, "p");
  g.freeze();
  EXPECT_TRUE(find_isomorphic_groups(g).empty());
}

TEST(Isomorphism, RequiresFrozenGraph) {
  PropertyGraph g;
  EXPECT_THROW(find_isomorphic_groups(g), Error);
}

TEST(Isomorphism, MatchesPairwiseOracleAndPartitions) {
  std::size_t total = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto g = kgtest::random_graph_with_twins(300 + trial, 40 + trial * 5);
    auto groups = find_isomorphic_groups(g);
    total += groups.size();
    EXPECT_EQ(as_ordinals(groups), kgtest::pairwise_isomorphic_groups(g));
    std::set<std::uint32_t> seen;
    for (const auto& grp : groups) {
      EXPECT_GE(grp.members.size(), 2u);
      for (auto h : grp.members) EXPECT_TRUE(seen.insert(h.ordinal).second);
      for (auto h : grp.members) EXPECT_EQ(signature_of(g, h), signature_of(g, grp.members[0]));
    }
  }
  EXPECT_GT(total, 40u);
}

TEST(Scoring, IdenticalPairScoresHundred) {
  auto g = pair_sharing_target(true);
  auto grp = score_group(g, find_isomorphic_groups(g)[0]);
  ASSERT_TRUE(grp.scored);
  EXPECT_EQ(*grp.mean_alignment, 100.0);
}

TEST(Scoring, MissingSequenceLeavesGroupUnscored) {
  PropertyGraph g;
  auto t = g.add_node({"Entrez:1", "", {"Gene"}, {}});
  for (int i = 0; i < 3; ++i) {
    graph::PropertyMap props;
    if (i) props.add("Sequence", "ACGU");
    g.add_edge(g.add_node({"A:" + std::to_string(i), "", {"miRNA"}, props}), t, "p");
  }
  g.freeze();
  auto groups = score_groups(g, find_isomorphic_groups(g));
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_FALSE(groups[0].scored);
  EXPECT_FALSE(groups[0].mean_alignment);
}

TEST(Scoring, MeanOverAllPairsMatchesRecomputation) {
  kgforge::Rng rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    PropertyGraph g;
    auto t = g.add_node({"Entrez:1", "", {"Gene"}, {}});
    std::vector<std::string> seqs;
    for (int i = 0; i < 4; ++i) {
      seqs.push_back(kgtest::random_sequence(rng, 5 + rng.below(15)));
      g.add_edge(g.add_node({"A:" + std::to_string(i), "", {"miRNA"}, {{"Sequence", {seqs.back()}}}}), t, "p");
    }
    g.freeze();
    auto grp = score_group(g, find_isomorphic_groups(g)[0]);
    double sum = 0;
    int pairs = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        sum += needleman_wunsch(seqs[i], seqs[j]).percent_identity;
        ++pairs;
      }
    EXPECT_EQ(pairs, 6);
    EXPECT_DOUBLE_EQ(*grp.mean_alignment, sum / 6.0);
  }
}

TEST(Scoring, ParallelScoringIsIdentical) {
  auto planted = kgtest::planted_prune_graph(4, 30, 5, 24);
  auto groups = find_isomorphic_groups(planted.graph);
  auto one = score_groups(planted.graph, groups, {}, 1);
  auto four = score_groups(planted.graph, groups, {}, 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].mean_alignment, four[i].mean_alignment);
}

TEST(Histogram, Examples) {
  std::vector<IsoGroup> groups;
  for (double s : {95.0, 85.0, 45.0}) groups.push_back({{NodeHandle{0}, NodeHandle{1}}, s, true});
  auto h = score_histogram(groups);
  EXPECT_EQ(h.groups, (std::array<std::size_t, 6>{1, 1, 0, 0, 0, 1}));
  EXPECT_EQ(h.scored, 3u);
  EXPECT_EQ(h.median, 85.0);
  auto empty = score_histogram(std::vector<IsoGroup>{{{NodeHandle{0}, NodeHandle{1}}, std::nullopt, false}});
  EXPECT_EQ(empty.scored, 0u);
  EXPECT_FALSE(empty.median);
  EXPECT_EQ(std::accumulate(empty.groups.begin(), empty.groups.end(), std::size_t{0}), 0u);
}

TEST(Histogram, BinEdges) {
  EXPECT_EQ(bin_of(100), 0u);
  EXPECT_EQ(bin_of(90.0001), 0u);
  EXPECT_EQ(bin_of(90), 1u);
  EXPECT_EQ(bin_of(80), 2u);
  EXPECT_EQ(bin_of(50.5), 4u);
  EXPECT_EQ(bin_of(50), 5u);
  EXPECT_EQ(bin_of(0), 5u);
}

TEST(Histogram, LowerMedianForEvenCounts) {
  std::vector<IsoGroup> groups;
  for (double s : {10.0, 40.0, 20.0, 30.0}) groups.push_back({{NodeHandle{0}, NodeHandle{1}}, s, true});
  EXPECT_EQ(score_histogram(groups).median, 20.0);
}

TEST(Histogram, ReproducesReferenceTable) {
  const auto groups = reference_histogram_groups();
  const auto h = score_histogram(groups);
  EXPECT_EQ(groups.size(), 177u);
  EXPECT_EQ(h.scored, 157u);
  EXPECT_EQ(h.groups, (std::array<std::size_t, 6>{19, 47, 42, 36, 11, 2}));
  EXPECT_EQ(h.sequences, (std::array<std::size_t, 6>{72, 386, 834, 1182, 153, 5}));
  // Strictly above the lower median of 157 distinct scores: 78 groups, 49.7%.
  const auto selected = select_groups(groups, PrunePolicy::above_median());
  EXPECT_EQ(selected.size(), 78u);
  EXPECT_NEAR(100.0 * 78 / 157, 49.7, 0.05);
  const auto table = format_histogram_table(h);
  EXPECT_EQ(table.substr(0, table.find('\n')), "Alignment score (%)\tGroups\tSeq.");
  EXPECT_NE(table.find(">90\t19\t72\n"), std::string::npos);
  EXPECT_NE(table.find("Total\t157\t2632\n"), std::string::npos);
}

TEST(Histogram, ReportedEdgeReductionIsNineteenPointEightPercent) {
  // 244.8k edges reduced to 196.3k (the "M" in the source is inconsistent).
  EXPECT_NEAR(100.0 * (244.8 - 196.3) / 244.8, 19.8, 0.05);
}

TEST(Policy, ParseAndName) {
  EXPECT_EQ(PrunePolicy::parse("all").kind, PrunePolicy::Kind::All);
  EXPECT_EQ(PrunePolicy::parse("above_median").kind, PrunePolicy::Kind::AboveMedian);
  auto t = PrunePolicy::parse("above_threshold:72.5");
  EXPECT_EQ(t.kind, PrunePolicy::Kind::AboveThreshold);
  EXPECT_EQ(t.threshold, 72.5);
  EXPECT_EQ(t.name(), "above_threshold:72.5");
  EXPECT_THROW(PrunePolicy::parse("above_threshold:x"), Error);
  EXPECT_THROW(PrunePolicy::parse("most"), Error);
}

TEST(Policy, SingleScoredGroupNotAboveOwnMedian) {
  auto g = pair_sharing_target(true);
  auto r = prune::prune(g, PrunePolicy::above_median());
  EXPECT_EQ(r.report.groups_scored, 1u);
  EXPECT_EQ(r.report.groups_collapsed, 0u);
  EXPECT_EQ(r.report.nodes_after, r.report.nodes_before);
}

TEST(Policy, UnscoredGroupsOnlyCollapsedByAll) {
  auto groups = reference_histogram_groups();
  for (auto policy : {PrunePolicy::above_median(), PrunePolicy::above_threshold(0)})
    for (const auto* grp : select_groups(groups, policy)) EXPECT_TRUE(grp->scored);
  EXPECT_EQ(select_groups(groups, PrunePolicy::all()).size(), 177u);
}

TEST(Policy, ThresholdMonotone) {
  auto groups = reference_histogram_groups();
  for (double t1 = 0; t1 < 100; t1 += 7.5) {
    for (double t2 = t1; t2 <= 100; t2 += 11) {
      auto lo = select_groups(groups, PrunePolicy::above_threshold(t1));
      auto hi = select_groups(groups, PrunePolicy::above_threshold(t2));
      std::set<const IsoGroup*> slo(lo.begin(), lo.end());
      for (const auto* g : hi) EXPECT_TRUE(slo.count(g));
    }
  }
}

TEST(Collapse, PairWithCommonNeighbor) {
  auto g = pair_sharing_target(true);
  auto r = prune::prune(g, PrunePolicy::all());
  EXPECT_EQ(r.report.nodes_after, 2u);
  EXPECT_EQ(r.report.edges_after, 1u);
  EXPECT_TRUE(r.graph.frozen());
  // Smallest curie is the representative; Source lists are unioned.
  auto rep = r.graph.find("RNAcentral:URS0000000001");
  ASSERT_TRUE(rep);
  EXPECT_FALSE(r.graph.find("RNAcentral:URS0000000002"));
  const auto& e = r.graph.edge(r.graph.out_edges(*rep)[0]);
  EXPECT_EQ(e.properties.find("Source")->size(), 2u);
  EXPECT_TRUE(g.find("RNAcentral:URS0000000002"));  // input untouched
}

TEST(Collapse, PlantedGroupsClosedForm) {
  for (int trial = 0; trial < 10; ++trial) {
    auto planted = kgtest::planted_prune_graph(70 + trial, 20, 4);
    const auto& g = planted.graph;
    auto found = find_isomorphic_groups(g);
    ASSERT_EQ(found.size(), planted.groups.size());
    std::vector<double> scores;
    for (const auto& pg : planted.groups)
      if (pg.percent) scores.push_back(*pg.percent);
    std::sort(scores.begin(), scores.end());
    const double median = scores[(scores.size() - 1) / 2];
    for (auto policy : {PrunePolicy::all(), PrunePolicy::above_median(), PrunePolicy::above_threshold(60)}) {
      std::size_t removed = 0, collapsed = 0;
      for (const auto& pg : planted.groups) {
        bool take = policy.kind == PrunePolicy::Kind::All;
        if (policy.kind == PrunePolicy::Kind::AboveMedian) take = pg.percent && *pg.percent > median;
        if (policy.kind == PrunePolicy::Kind::AboveThreshold) take = pg.percent && *pg.percent > 60;
        if (take) {
          removed += pg.members.size() - 1;
          ++collapsed;
        }
      }
      auto r = prune::prune(g, policy);
      EXPECT_EQ(r.report.groups_found, planted.groups.size());
      EXPECT_EQ(r.report.groups_scored, scores.size());
      EXPECT_EQ(r.report.groups_collapsed, collapsed) << policy.name();
      EXPECT_EQ(r.report.nodes_after, r.report.nodes_before - removed) << policy.name();
      EXPECT_EQ(r.graph.node_count(), r.report.nodes_after);
      EXPECT_LE(r.report.edges_after, r.report.edges_before);
      const auto& h = r.report.histogram;
      EXPECT_EQ(std::accumulate(h.groups.begin(), h.groups.end(), std::size_t{0}), h.scored);
      EXPECT_EQ(h.median, median);
    }
  }
}

TEST(Collapse, PolicyAllReachesFixpoint) {
  for (int trial = 0; trial < 15; ++trial) {
    auto g = kgtest::random_graph_with_twins(600 + trial, 80);
    auto r = prune::prune(g, PrunePolicy::all());
    EXPECT_TRUE(find_isomorphic_groups(r.graph).empty());
    // Merging redirects every member's edges to one node, so it cannot make
    // two outside nodes indistinguishable: one round always suffices.
    EXPECT_EQ(r.report.rounds, 1u);
    EXPECT_EQ(r.report.nodes_before - r.report.nodes_after, r.report.nodes_removed);
  }
}

TEST(Report, JsonShape) {
  auto planted = kgtest::planted_prune_graph(5, 6, 1);
  auto r = prune::prune(planted.graph, PrunePolicy::above_median());
  auto j = prune::to_json(r.report);
  EXPECT_EQ(j["policy"], "above_median");
  EXPECT_EQ(j["groups_found"], 7);
  EXPECT_EQ(j["groups_scored"], 6);
  EXPECT_TRUE(j["median_defined"].get<bool>());
  EXPECT_EQ(j["histogram"].size(), 6u);
  EXPECT_EQ(j["histogram"][0]["bin"], ">90");
  PruneReport empty;
  EXPECT_TRUE(prune::to_json(empty)["median"].is_null());
}
