#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgforge/graph/property_graph.hpp"
#include "kgforge/ingest/schemes.hpp"

namespace kgforge::ingest {

// Per-source raw-id -> curie tables. Each table is a function: a raw id maps
// to exactly one curie, and every curie is valid under the registry.
class LookupTables {
 public:
  explicit LookupTables(const SchemeRegistry& registry = SchemeRegistry::standard()) : registry_(&registry) {}

  void add(const std::string& source, const std::string& raw_id, const std::string& curie);
  // lookup.tsv: source, raw_id, curie (header row required).
  void load(std::istream& in, const std::string& source_name = "<stream>");
  void load_file(const std::filesystem::path& path);

  bool has_source(std::string_view source) const;
  const std::string* find(std::string_view source, std::string_view raw_id) const;
  const SchemeRegistry& registry() const noexcept { return *registry_; }
  std::size_t size() const noexcept;

 private:
  const SchemeRegistry* registry_;
  std::map<std::string, std::unordered_map<std::string, std::string>, std::less<>> tables_;
};

// Registered curies pass through unchanged; anything else goes through the
// table for `source`. Throws UnknownSource / UnmappedIdentifier.
std::string map_identifier(std::string_view raw_id, std::string_view source, const LookupTables& tables);

struct OntologyTermRecord {
  std::string curie;
  std::string label;
  std::string description;
  std::vector<std::string> synonyms;
  graph::PropertyMap extras;  // Formula, SMILES, Mass, Charge, CAS, InChIKey, Sequence, Species, ...

  graph::PropertyMap as_properties() const;
};

// terms.tsv: id, label, description, synonyms, ...extra columns.
std::vector<OntologyTermRecord> parse_terms(std::istream& in, const std::string& source_name = "<stream>");
std::vector<OntologyTermRecord> parse_terms_file(const std::filesystem::path& path);

struct EnrichReport {
  std::size_t enriched = 0;
  std::vector<std::string> unmatched;
};

EnrichReport enrich_nodes(graph::PropertyGraph& g, const std::vector<OntologyTermRecord>& records);

using ClassMap = std::map<std::string, std::string>;  // instance curie -> ontology class curie

// class_map.tsv: id, class.
ClassMap parse_class_map(std::istream& in, const std::string& source_name = "<stream>");
ClassMap parse_class_map_file(const std::filesystem::path& path);

inline constexpr std::string_view kSubClassOf = "subClassOf";

// Adds instance -subClassOf-> class for each entry. Returns the number of new
// edges. Throws MissingClassNode / UnknownCurie.
std::size_t link_entities(graph::PropertyGraph& g, const ClassMap& class_map);

class PmidYearTable {
 public:
  // Throws ConflictingYear if pmid is already present with another year.
  void add(const std::string& pmid, int year);
  std::optional<int> year(std::string_view pmid) const;
  std::size_t size() const noexcept { return years_.size(); }
  bool empty() const noexcept { return years_.empty(); }
  const std::unordered_map<std::string, int>& entries() const noexcept { return years_; }

 private:
  std::unordered_map<std::string, int> years_;
};

// pmid_years.tsv: pmid, year. The header row is optional.
PmidYearTable load_pmid_years(std::istream& in, const std::string& source_name = "<stream>");
PmidYearTable load_pmid_years(const std::filesystem::path& path);

struct BuildInputs {
  std::vector<std::filesystem::path> node_files;
  std::vector<std::filesystem::path> edge_files;
  std::vector<std::filesystem::path> lookup_files;
  std::vector<std::filesystem::path> term_files;
  std::vector<std::filesystem::path> class_map_files;
};

struct RejectedRow {
  std::string file;
  std::size_t line = 0;
  std::string reason;
};

struct IngestReport {
  std::size_t nodes_loaded = 0;
  std::size_t edge_rows = 0;
  std::size_t edges_created = 0;
  std::size_t terms_enriched = 0;
  std::size_t terms_unmatched = 0;
  std::size_t links_added = 0;
  std::vector<RejectedRow> rejects;
};

// Parse errors abort the build (thrown); row-level resolution failures
// (unmapped ids, unknown endpoints, duplicates, self-loops) are collected in
// the report. The returned graph is frozen.
graph::PropertyGraph build_graph(const BuildInputs& inputs, IngestReport& report);

}  // namespace kgforge::ingest
