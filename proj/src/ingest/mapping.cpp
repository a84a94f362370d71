#include "kgforge/ingest/mapping.hpp"

#include <fstream>
#include <istream>

#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"
#include "kgforge/ingest/tsv_io.hpp"

namespace kgforge::ingest {
namespace {

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return in;
}

std::vector<std::string> read_header(std::istream& in, const std::string& source, std::initializer_list<const char*> expected) {
  std::string line;
  if (!read_line(in, line)) throw Error(Errc::MalformedHeader, source + ": missing header row");
  auto header = text::split(line, '\t');
  std::size_t i = 0;
  for (const char* name : expected) {
    if (i >= header.size() || header[i] != name)
      throw Error(Errc::MalformedHeader, source + ": expected column '" + name + "' at position " + std::to_string(i));
    ++i;
  }
  return header;
}

}  // namespace

void LookupTables::add(const std::string& source, const std::string& raw_id, const std::string& curie) {
  if (!registry_->is_valid_curie(curie))
    throw Error(Errc::InvalidCurie, "lookup value '" + curie + "' is not a registered curie");
  auto& table = tables_[source];
  auto [it, inserted] = table.emplace(raw_id, curie);
  if (!inserted && it->second != curie)
    throw Error(Errc::InvalidValue, "raw id '" + raw_id + "' in source '" + source + "' maps to both '" + it->second +
                                        "' and '" + curie + "'");
}

void LookupTables::load(std::istream& in, const std::string& source_name) {
  read_header(in, source_name, {"source", "raw_id", "curie"});
  std::string line;
  std::size_t lineno = 1;
  while (read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = text::split(line, '\t');
    if (cells.size() != 3 || cells[0].empty() || cells[1].empty() || cells[2].empty())
      throw Error(Errc::MalformedRow, source_name + ":" + std::to_string(lineno) + ": expected 3 non-empty columns");
    add(cells[0], cells[1], cells[2]);
  }
}

void LookupTables::load_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  load(in, path.string());
}

bool LookupTables::has_source(std::string_view source) const { return tables_.find(source) != tables_.end(); }

const std::string* LookupTables::find(std::string_view source, std::string_view raw_id) const {
  auto t = tables_.find(source);
  if (t == tables_.end()) return nullptr;
  auto it = t->second.find(std::string(raw_id));
  return it == t->second.end() ? nullptr : &it->second;
}

std::size_t LookupTables::size() const noexcept {
  std::size_t n = 0;
  for (const auto& [source, table] : tables_) n += table.size();
  return n;
}

std::string map_identifier(std::string_view raw_id, std::string_view source, const LookupTables& tables) {
  if (tables.registry().is_valid_curie(raw_id)) return std::string(raw_id);
  if (!tables.has_source(source)) throw Error(Errc::UnknownSource, "no lookup table for source '" + std::string(source) + "'");
  if (const std::string* curie = tables.find(source, raw_id)) return *curie;
  throw Error(Errc::UnmappedIdentifier, "'" + std::string(raw_id) + "' (source '" + std::string(source) + "')");
}

graph::PropertyMap OntologyTermRecord::as_properties() const {
  graph::PropertyMap props;
  if (!label.empty()) props.add("Label", label);
  if (!description.empty()) props.add("Description", description);
  props.add("Synonyms", synonyms);
  props.merge(extras);
  return props;
}

std::vector<OntologyTermRecord> parse_terms(std::istream& in, const std::string& source_name) {
  const auto header = read_header(in, source_name, {"id", "label", "description", "synonyms"});
  std::vector<OntologyTermRecord> records;
  std::string line;
  std::size_t lineno = 1;
  while (read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string at = source_name + ":" + std::to_string(lineno);
    auto cells = text::split(line, '\t');
    if (cells.size() != header.size()) throw Error(Errc::MalformedRow, at + ": column count mismatch");
    OntologyTermRecord r;
    r.curie = cells[0];
    r.label = cells[1];
    if (r.curie.empty() || r.label.empty()) throw Error(Errc::MalformedRow, at + ": id and label are required");
    r.description = cells[2];
    r.synonyms = split_list_cell(cells[3], at);
    for (std::size_t c = 4; c < cells.size(); ++c) r.extras.add(header[c], split_list_cell(cells[c], at));
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<OntologyTermRecord> parse_terms_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_terms(in, path.string());
}

EnrichReport enrich_nodes(graph::PropertyGraph& g, const std::vector<OntologyTermRecord>& records) {
  EnrichReport report;
  for (const auto& r : records) {
    auto h = g.find(r.curie);
    if (!h) {
      report.unmatched.push_back(r.curie);
      continue;
    }
    g.merge_node_properties(*h, r.as_properties());
    ++report.enriched;
  }
  return report;
}

ClassMap parse_class_map(std::istream& in, const std::string& source_name) {
  read_header(in, source_name, {"id", "class"});
  ClassMap map;
  std::string line;
  std::size_t lineno = 1;
  while (read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = text::split(line, '\t');
    if (cells.size() != 2 || cells[0].empty() || cells[1].empty())
      throw Error(Errc::MalformedRow, source_name + ":" + std::to_string(lineno) + ": expected 2 non-empty columns");
    auto [it, inserted] = map.emplace(cells[0], cells[1]);
    if (!inserted && it->second != cells[1])
      throw Error(Errc::InvalidValue, source_name + ":" + std::to_string(lineno) + ": '" + cells[0] +
                                          "' mapped to two classes");
  }
  return map;
}

ClassMap parse_class_map_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_class_map(in, path.string());
}

std::size_t link_entities(graph::PropertyGraph& g, const ClassMap& class_map) {
  const std::size_t before = g.edge_count();
  for (const auto& [instance, cls] : class_map) {
    auto class_handle = g.find(cls);
    if (!class_handle) throw Error(Errc::MissingClassNode, cls);
    auto instance_handle = g.find(instance);
    if (!instance_handle) throw Error(Errc::UnknownCurie, instance);
    g.add_edge(*instance_handle, *class_handle, kSubClassOf);
  }
  return g.edge_count() - before;
}

void PmidYearTable::add(const std::string& pmid, int year) {
  if (year < 1900 || year > 2100) throw Error(Errc::InvalidValue, "year out of range for pmid " + pmid);
  auto [it, inserted] = years_.emplace(pmid, year);
  if (!inserted && it->second != year)
    throw Error(Errc::ConflictingYear, pmid + ": " + std::to_string(it->second) + " vs " + std::to_string(year));
}

std::optional<int> PmidYearTable::year(std::string_view pmid) const {
  auto it = years_.find(std::string(pmid));
  if (it == years_.end()) return std::nullopt;
  return it->second;
}

PmidYearTable load_pmid_years(std::istream& in, const std::string& source_name) {
  PmidYearTable table;
  std::string line;
  std::size_t lineno = 0;
  while (read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line == "pmid\tyear") continue;
    const std::string at = source_name + ":" + std::to_string(lineno);
    auto cells = text::split(line, '\t');
    if (cells.size() != 2 || cells[0].empty()) throw Error(Errc::MalformedRow, at + ": expected pmid and year");
    auto year = text::parse_int(cells[1]);
    if (!year || *year < 1900 || *year > 2100) throw Error(Errc::MalformedRow, at + ": bad year '" + cells[1] + "'");
    table.add(cells[0], static_cast<int>(*year));
  }
  return table;
}

PmidYearTable load_pmid_years(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_pmid_years(in, path.string());
}

graph::PropertyGraph build_graph(const BuildInputs& inputs, IngestReport& report) {
  graph::PropertyGraph g;
  LookupTables tables;
  for (const auto& f : inputs.lookup_files) tables.load_file(f);

  for (const auto& f : inputs.node_files) {
    for (auto& node : parse_nodes_file(f)) {
      const std::string curie = node.curie;
      try {
        g.add_node(std::move(node));
        ++report.nodes_loaded;
      } catch (const Error& e) {
        if (e.code() != Errc::DuplicateCurie) throw;
        report.rejects.push_back({f.string(), 0, std::string("duplicate node ") + curie});
      }
    }
  }

  for (const auto& f : inputs.edge_files) {
    for (const auto& rec : parse_edges_file(f)) {
      ++report.edge_rows;
      const auto* sources = rec.properties.find("Source");
      const std::string source = sources ? sources->front() : std::string();
      auto resolve = [&](const std::string& raw) -> graph::NodeHandle {
        if (auto h = g.find(raw)) return *h;
        const std::string mapped = map_identifier(raw, source, tables);
        if (auto h = g.find(mapped)) return *h;
        throw Error(Errc::UnknownEndpoint, "'" + mapped + "' is not a node");
      };
      try {
        const auto src = resolve(rec.subject);
        const auto dst = resolve(rec.object);
        const std::size_t before = g.edge_count();
        g.add_edge(src, dst, rec.predicate, rec.properties);
        report.edges_created += g.edge_count() - before;
      } catch (const Error& e) {
        switch (e.code()) {
          case Errc::UnmappedIdentifier:
          case Errc::UnknownSource:
          case Errc::UnknownEndpoint:
          case Errc::SelfLoop:
            report.rejects.push_back({f.string(), rec.line, e.what()});
            break;
          default:
            throw;
        }
      }
    }
  }

  for (const auto& f : inputs.term_files) {
    auto r = enrich_nodes(g, parse_terms_file(f));
    report.terms_enriched += r.enriched;
    report.terms_unmatched += r.unmatched.size();
  }
  for (const auto& f : inputs.class_map_files) report.links_added += link_entities(g, parse_class_map_file(f));

  g.freeze();
  return g;
}

}  // namespace kgforge::ingest
