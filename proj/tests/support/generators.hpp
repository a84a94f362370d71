#pragma once
// Seeded fixture generators shared by unit and acceptance tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgforge/common/rng.hpp"
#include "kgforge/graph/property_graph.hpp"
#include "kgforge/ingest/mapping.hpp"

namespace kgtest {

using kgforge::Rng;
using kgforge::graph::PropertyGraph;

std::string random_sequence(Rng& rng, std::size_t length, std::string_view alphabet = "ACGU");

struct RandomGraphSpec {
  std::size_t nodes = 50;
  std::size_t edges = 120;
  std::vector<std::string> labels = {"miRNA", "Gene", "Disease"};
  std::vector<std::string> predicates = {"regulates", "causes", "interacts_with"};
  std::vector<std::string> edge_properties = {"Method", "PubMedID", "Source"};
  std::vector<std::string> values = {"western blotting", "qPCR", "microarray", "25531890", "17942906", "HMDD"};
  double sequence_probability = 0.5;
  std::size_t max_labels = 2;
};

// Frozen random graph; curies "N:<i>", uris "http://x/<i>".
PropertyGraph random_graph(std::uint64_t seed, const RandomGraphSpec& spec);

// Random graph with some nodes copying another node's labels and
// neighborhood, so isomorphic groups exist.
PropertyGraph random_graph_with_twins(std::uint64_t seed, std::size_t nodes);

// Pruning fixture: groups of miRNAs sharing one private target plus some
// shared hub targets. Member sequences are A^n followed by a distinct tail
// letter (C, G or U) repeated L-n times, so every pair aligns at exactly
// 100*n/L percent. Unscored groups omit Sequence on one member.
struct PlantedGroup {
  std::vector<std::string> members;  // curies
  std::optional<double> percent;     // planted pairwise identity; nullopt = unscored
};
struct PlantedPruneGraph {
  PropertyGraph graph;
  std::vector<PlantedGroup> groups;
  std::size_t background = 0;  // ungrouped miRNAs
};
PlantedPruneGraph planted_prune_graph(std::uint64_t seed, std::size_t scored_groups, std::size_t unscored_groups,
                                      std::size_t length = 20);

// Bipartite miRNA x Gene graph in two blocks; inside each block nodes are
// split into communities and edges stay within a community.
struct BlockGraphSpec {
  std::size_t mirnas = 1000;
  std::size_t genes = 1000;
  std::size_t communities_per_block = 20;
  std::size_t edges_per_mirna = 5;
};
PropertyGraph two_block_bipartite(std::uint64_t seed, const BlockGraphSpec& spec = {});

// Same structure with a PubMedID per edge and a year table. A share of the
// edges (post_share) is dated in [cutoff, cutoff+3], the rest before.
struct DatedFixture {
  PropertyGraph graph;
  kgforge::ingest::PmidYearTable years;
  std::size_t planted_post = 0;
  std::size_t planted_pre = 0;
};
DatedFixture dated_block_graph(std::uint64_t seed, int cutoff, double post_share, const BlockGraphSpec& spec = {});

// miRNAdisease-shaped fixture at 1/scale of the published edge-type counts.
struct EdgeTypeRow {
  std::string source, target, predicate;
  std::size_t count;
};
std::vector<EdgeTypeRow> reference_edge_rows(std::size_t scale);
std::vector<std::pair<std::string, std::size_t>> reference_node_counts(std::size_t scale);
PropertyGraph reference_shaped_graph(std::uint64_t seed, std::size_t scale);

std::string fixture_dir();  // tests/fixtures
std::string read_file(const std::string& path);

// tests/fixtures/mini run through the ingest pipeline (frozen).
kgforge::ingest::BuildInputs mini_inputs();
PropertyGraph mini_graph();

}  // namespace kgtest
