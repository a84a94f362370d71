#include "kgforge/ingest/tsv_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"

namespace kgforge::ingest {
namespace {

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::string where(const std::string& source, std::size_t line) { return source + ":" + std::to_string(line); }

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return in;
}

void check_value(const std::string& v) {
  if (v.find_first_of("|\t\n\r") != std::string::npos)
    throw Error(Errc::InvalidValue, "value contains a reserved character: '" + v + "'");
}

}  // namespace

std::vector<std::string> split_list_cell(std::string_view cell, const std::string& where) {
  if (cell.empty()) return {};
  auto parts = text::split(cell, '|');
  for (const auto& p : parts)
    if (p.empty()) throw Error(Errc::MalformedRow, where + ": empty list element in '" + std::string(cell) + "'");
  return parts;
}

std::string join_list_cell(const std::vector<std::string>& values) {
  for (const auto& v : values) check_value(v);
  return text::join(values, "|");
}

std::vector<graph::Node> parse_nodes(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!read_line(in, line)) throw Error(Errc::MalformedHeader, source_name + ": missing header row");
  const auto header = text::split(line, '\t');
  if (header.size() < 3 || header[0] != "id" || header[1] != "uri" || header[2] != "category")
    throw Error(Errc::MalformedHeader, source_name + ": expected id, uri, category as first columns");

  std::vector<graph::Node> nodes;
  std::size_t lineno = 1;
  while (read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = text::split(line, '\t');
    const std::string at = where(source_name, lineno);
    if (cells.size() != header.size())
      throw Error(Errc::MalformedRow, at + ": expected " + std::to_string(header.size()) + " columns, got " +
                                          std::to_string(cells.size()));
    graph::Node node;
    node.curie = cells[0];
    if (node.curie.empty()) throw Error(Errc::MalformedRow, at + ": empty id");
    node.uri = cells[1];
    node.labels = split_list_cell(cells[2], at);
    if (node.labels.empty()) throw Error(Errc::InvalidLabelSet, at + ": empty category");
    for (std::size_t c = 3; c < cells.size(); ++c) {
      auto values = split_list_cell(cells[c], at);
      const std::string& name = header[c];
      if (name == "Sequence") {
        for (const auto& v : values)
          if (!graph::is_valid_sequence(v)) throw Error(Errc::InvalidSequence, at + ": '" + v + "'");
      } else if (name == "Genomic_coordinates") {
        for (const auto& v : values)
          if (!graph::is_valid_coordinate(v)) throw Error(Errc::InvalidCoordinate, at + ": '" + v + "'");
      }
      node.properties.add(name, values);
    }
    nodes.push_back(std::move(node));
  }
  return nodes;
}

std::vector<graph::Node> parse_nodes_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_nodes(in, path.string());
}

std::vector<EdgeRecord> parse_edges(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!read_line(in, line)) throw Error(Errc::MalformedHeader, source_name + ": missing header row");
  const auto header = text::split(line, '\t');
  if (header.size() < 3 || header[0] != "subject" || header[1] != "predicate" || header[2] != "object")
    throw Error(Errc::MalformedHeader, source_name + ": expected subject, predicate, object as first columns");

  std::vector<EdgeRecord> edges;
  std::size_t lineno = 1;
  while (read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = text::split(line, '\t');
    const std::string at = where(source_name, lineno);
    if (cells.size() != header.size())
      throw Error(Errc::MalformedRow, at + ": expected " + std::to_string(header.size()) + " columns, got " +
                                          std::to_string(cells.size()));
    if (cells[0].empty() || cells[1].empty() || cells[2].empty())
      throw Error(Errc::MalformedRow, at + ": empty subject, predicate or object");
    EdgeRecord rec{cells[0], cells[1], cells[2], {}, lineno};
    for (std::size_t c = 3; c < cells.size(); ++c) rec.properties.add(header[c], split_list_cell(cells[c], at));
    edges.push_back(std::move(rec));
  }
  return edges;
}

std::vector<EdgeRecord> parse_edges_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edges(in, path.string());
}

namespace {

template <class Range, class PropsOf>
std::vector<std::string> property_columns(const Range& items, PropsOf props_of, bool label_first) {
  std::vector<std::string> cols;
  if (label_first) cols.push_back("Label");
  for (const auto& item : items)
    for (const auto& [name, values] : props_of(item))
      if (std::find(cols.begin(), cols.end(), name) == cols.end()) cols.push_back(name);
  return cols;
}

void write_property_cells(std::ostream& out, const graph::PropertyMap& props, const std::vector<std::string>& cols) {
  for (const auto& c : cols) {
    out << '\t';
    if (const auto* values = props.find(c)) out << join_list_cell(*values);
  }
}

void write_header(std::ostream& out, std::initializer_list<const char*> fixed, const std::vector<std::string>& cols) {
  bool first = true;
  for (const char* f : fixed) {
    if (!first) out << '\t';
    out << f;
    first = false;
  }
  for (const auto& c : cols) out << '\t' << c;
  out << '\n';
}

void write_node_row(std::ostream& out, const graph::Node& n, const std::vector<std::string>& cols) {
  check_value(n.curie);
  check_value(n.uri);
  out << n.curie << '\t' << n.uri << '\t' << join_list_cell(n.labels);
  write_property_cells(out, n.properties, cols);
  out << '\n';
}

}  // namespace

void write_nodes(std::ostream& out, std::span<const graph::Node> nodes) {
  auto cols = property_columns(nodes, [](const graph::Node& n) -> const graph::PropertyMap& { return n.properties; }, true);
  write_header(out, {"id", "uri", "category"}, cols);
  for (const auto& n : nodes) write_node_row(out, n, cols);
}

void write_edges(std::ostream& out, std::span<const EdgeRecord> edges) {
  auto cols = property_columns(edges, [](const EdgeRecord& e) -> const graph::PropertyMap& { return e.properties; }, false);
  write_header(out, {"subject", "predicate", "object"}, cols);
  for (const auto& e : edges) {
    check_value(e.subject);
    check_value(e.predicate);
    check_value(e.object);
    out << e.subject << '\t' << e.predicate << '\t' << e.object;
    write_property_cells(out, e.properties, cols);
    out << '\n';
  }
}

void write_nodes(std::ostream& out, const graph::PropertyGraph& g) {
  const auto handles = g.node_handles();
  auto cols = property_columns(handles, [&](graph::NodeHandle h) -> const graph::PropertyMap& { return g.node(h).properties; }, true);
  write_header(out, {"id", "uri", "category"}, cols);
  for (auto h : handles) write_node_row(out, g.node(h), cols);
}

void write_edges(std::ostream& out, const graph::PropertyGraph& g) {
  const auto ids = g.edge_ids();
  auto cols = property_columns(ids, [&](graph::EdgeId id) -> const graph::PropertyMap& { return g.edge(id).properties; }, false);
  write_header(out, {"subject", "predicate", "object"}, cols);
  for (auto id : ids) {
    const auto& e = g.edge(id);
    out << g.node(e.src).curie << '\t' << e.predicate << '\t' << g.node(e.dst).curie;
    write_property_cells(out, e.properties, cols);
    out << '\n';
  }
}

}  // namespace kgforge::ingest
