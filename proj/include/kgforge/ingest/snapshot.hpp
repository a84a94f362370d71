#pragma once

#include <filesystem>
#include <string>

#include "kgforge/graph/property_graph.hpp"

namespace kgforge::ingest {

// A snapshot is a directory holding nodes.tsv, edges.tsv and manifest.json.
// The content hash is SHA-256 over the two TSV files, nodes first.
struct SnapshotManifest {
  std::string format = "kgforge-snapshot";
  int version = 1;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::string content_hash;
};

struct SerializedGraph {
  std::string nodes_tsv;
  std::string edges_tsv;
};

SerializedGraph serialize_graph(const graph::PropertyGraph& g);
std::string content_hash(const graph::PropertyGraph& g);

SnapshotManifest save_snapshot(const graph::PropertyGraph& g, const std::filesystem::path& dir);
// Loads and verifies the manifest; the result is frozen. Throws
// SnapshotCorrupt on hash or count mismatch.
graph::PropertyGraph load_snapshot(const std::filesystem::path& dir, SnapshotManifest* manifest = nullptr);

graph::PropertyGraph graph_from_tsv(const std::string& nodes_tsv, const std::string& edges_tsv);

}  // namespace kgforge::ingest
