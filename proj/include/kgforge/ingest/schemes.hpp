#pragma once

#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace kgforge::ingest {

struct Scheme {
  std::string entity_kind;  // e.g. "ncRNA"
  std::string name;         // e.g. "RNAcentral"
  std::string prefix;       // curie prefix, e.g. "RNAcentral"
  std::string local_pattern;
  std::string example;      // full curie
  std::regex local_regex;
};

// Registered identification schemes. `standard()` carries the main
// bio-entity schemes plus the ontologies used for typing and linking
// (SO, RO) and DrugBank.
class SchemeRegistry {
 public:
  static const SchemeRegistry& standard();

  void add(std::string entity_kind, std::string name, std::string prefix, std::string local_pattern,
           std::string example);

  const Scheme* by_prefix(std::string_view prefix) const noexcept;
  // Case-insensitive match on scheme name or prefix.
  const Scheme* by_name(std::string_view name) const noexcept;

  bool is_valid_curie(std::string_view curie) const;

  const std::vector<Scheme>& schemes() const noexcept { return schemes_; }

 private:
  std::vector<Scheme> schemes_;
};

// Splits "scheme:local" at the first colon; empty parts yield false.
bool split_curie(std::string_view curie, std::string_view& prefix, std::string_view& local) noexcept;

}  // namespace kgforge::ingest
