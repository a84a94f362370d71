#include <algorithm>
#include <ostream>

#include "kgforge/common/text.hpp"
#include "kgforge/query/views.hpp"

namespace kgforge::query {

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

template <class Ids, class PropsOf>
std::vector<std::string> columns_of(const Ids& ids, PropsOf props_of, bool label_first) {
  std::vector<std::string> cols;
  if (label_first) cols.push_back("Label");
  for (const auto& id : ids)
    for (const auto& [name, values] : props_of(id))
      if (std::find(cols.begin(), cols.end(), name) == cols.end()) cols.push_back(name);
  return cols;
}

void write_properties(std::ostream& out, const graph::PropertyMap& props, const std::vector<std::string>& cols) {
  for (const auto& c : cols) {
    out << ',';
    if (const auto* v = props.find(c)) out << csv_field(text::join(*v, "|"));
  }
}

}  // namespace

void write_nodes_csv(std::ostream& out, const graph::PropertyGraph& g) {
  const auto handles = g.node_handles();
  const auto cols = columns_of(handles, [&](graph::NodeHandle h) -> const graph::PropertyMap& { return g.node(h).properties; }, true);
  out << "id,uri,category";
  for (const auto& c : cols) out << ',' << csv_field(c);
  out << "\r\n";
  for (auto h : handles) {
    const auto& n = g.node(h);
    out << csv_field(n.curie) << ',' << csv_field(n.uri) << ',' << csv_field(text::join(n.labels, "|"));
    write_properties(out, n.properties, cols);
    out << "\r\n";
  }
}

void write_edges_csv(std::ostream& out, const graph::PropertyGraph& g) {
  const auto ids = g.edge_ids();
  const auto cols = columns_of(ids, [&](graph::EdgeId id) -> const graph::PropertyMap& { return g.edge(id).properties; }, false);
  out << "subject,predicate,object";
  for (const auto& c : cols) out << ',' << csv_field(c);
  out << "\r\n";
  for (auto id : ids) {
    const auto& e = g.edge(id);
    out << csv_field(g.node(e.src).curie) << ',' << csv_field(e.predicate) << ',' << csv_field(g.node(e.dst).curie);
    write_properties(out, e.properties, cols);
    out << "\r\n";
  }
}

void write_table_csv(std::ostream& out, const ResultTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* s = std::get_if<std::string>(&row[i])) out << csv_field(*s);
      else out << csv_field(text::join(std::get<std::vector<std::string>>(row[i]), "|"));
    }
    out << "\r\n";
  }
}

}  // namespace kgforge::query
