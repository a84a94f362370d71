#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kgforge/graph/property_graph.hpp"

namespace kgforge::ingest {

// One data row of an edges file, before identifier resolution.
struct EdgeRecord {
  std::string subject;
  std::string predicate;
  std::string object;
  graph::PropertyMap properties;
  std::size_t line = 0;

  friend bool operator==(const EdgeRecord& a, const EdgeRecord& b) {
    return a.subject == b.subject && a.predicate == b.predicate && a.object == b.object &&
           a.properties == b.properties;
  }
};

// nodes.tsv: id, uri, category, Label, ...property columns. `category` and
// every property cell are `|`-separated lists; an empty cell means absent.
std::vector<graph::Node> parse_nodes(std::istream& in, const std::string& source_name = "<stream>");
std::vector<graph::Node> parse_nodes_file(const std::filesystem::path& path);

// edges.tsv: subject, predicate, object, ...property columns.
std::vector<EdgeRecord> parse_edges(std::istream& in, const std::string& source_name = "<stream>");
std::vector<EdgeRecord> parse_edges_file(const std::filesystem::path& path);

void write_nodes(std::ostream& out, std::span<const graph::Node> nodes);
void write_edges(std::ostream& out, std::span<const EdgeRecord> edges);

// Live nodes in handle order / live edges in id order.
void write_nodes(std::ostream& out, const graph::PropertyGraph& g);
void write_edges(std::ostream& out, const graph::PropertyGraph& g);

// Shared cell helpers.
std::vector<std::string> split_list_cell(std::string_view cell, const std::string& where);
std::string join_list_cell(const std::vector<std::string>& values);

}  // namespace kgforge::ingest
