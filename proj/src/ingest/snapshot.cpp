#include "kgforge/ingest/snapshot.hpp"

#include <fstream>
#include "json.hpp"
#include <sstream>

#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"
#include "kgforge/ingest/tsv_io.hpp"

namespace kgforge::ingest {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << data;
  if (!out) throw Error(Errc::IoError, "write failed: " + path.string());
}

std::string hash_of(const SerializedGraph& s) { return text::sha256_hex(s.nodes_tsv + s.edges_tsv); }

}  // namespace

SerializedGraph serialize_graph(const graph::PropertyGraph& g) {
  std::ostringstream nodes, edges;
  write_nodes(nodes, g);
  write_edges(edges, g);
  return {nodes.str(), edges.str()};
}

std::string content_hash(const graph::PropertyGraph& g) { return hash_of(serialize_graph(g)); }

SnapshotManifest save_snapshot(const graph::PropertyGraph& g, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto s = serialize_graph(g);
  SnapshotManifest m;
  m.node_count = g.node_count();
  m.edge_count = g.edge_count();
  m.content_hash = hash_of(s);
  write_file(dir / "nodes.tsv", s.nodes_tsv);
  write_file(dir / "edges.tsv", s.edges_tsv);
  nlohmann::ordered_json j;
  j["format"] = m.format;
  j["version"] = m.version;
  j["node_count"] = m.node_count;
  j["edge_count"] = m.edge_count;
  j["content_hash"] = m.content_hash;
  write_file(dir / "manifest.json", j.dump(2) + "\n");
  return m;
}

graph::PropertyGraph graph_from_tsv(const std::string& nodes_tsv, const std::string& edges_tsv) {
  graph::PropertyGraph g;
  std::istringstream nodes_in(nodes_tsv), edges_in(edges_tsv);
  for (auto& n : parse_nodes(nodes_in, "nodes.tsv")) g.add_node(std::move(n));
  for (const auto& e : parse_edges(edges_in, "edges.tsv")) {
    auto src = g.find(e.subject), dst = g.find(e.object);
    if (!src || !dst) throw Error(Errc::SnapshotCorrupt, "edge endpoint not in node table at line " + std::to_string(e.line));
    g.add_edge(*src, *dst, e.predicate, e.properties);
  }
  return g;
}

graph::PropertyGraph load_snapshot(const std::filesystem::path& dir, SnapshotManifest* manifest) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(dir / "manifest.json"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::SnapshotCorrupt, std::string("manifest: ") + e.what());
  }
  SnapshotManifest m;
  try {
    m.format = j.at("format").get<std::string>();
    m.version = j.at("version").get<int>();
    m.node_count = j.at("node_count").get<std::size_t>();
    m.edge_count = j.at("edge_count").get<std::size_t>();
    m.content_hash = j.at("content_hash").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::SnapshotCorrupt, std::string("manifest: ") + e.what());
  }
  if (m.format != "kgforge-snapshot" || m.version != 1) throw Error(Errc::SnapshotCorrupt, "unsupported snapshot format");

  SerializedGraph s{read_file(dir / "nodes.tsv"), read_file(dir / "edges.tsv")};
  if (hash_of(s) != m.content_hash) throw Error(Errc::SnapshotCorrupt, "content hash mismatch");
  auto g = graph_from_tsv(s.nodes_tsv, s.edges_tsv);
  if (g.node_count() != m.node_count || g.edge_count() != m.edge_count)
    throw Error(Errc::SnapshotCorrupt, "manifest counts do not match content");
  g.freeze();
  if (manifest) *manifest = m;
  return g;
}

}  // namespace kgforge::ingest
