#include "kgforge/ingest/schemes.hpp"

#include "kgforge/common/text.hpp"

namespace kgforge::ingest {

const SchemeRegistry& SchemeRegistry::standard() {
  static const SchemeRegistry registry = [] {
    SchemeRegistry r;
    r.add("Variant", "dbSNP", "dbSNP", "rs[0-9]+", "dbSNP:rs766102409");
    r.add("Variant", "COSMIC", "COSMIC", "COS[VMN][0-9]+", "COSMIC:COSV60127483");
    r.add("ncRNA", "RNAcentral", "RNAcentral", "URS[0-9A-F]{10}(_[0-9]+)?", "RNAcentral:URS00000478B7_9606");
    r.add("mRNA", "Ensembl", "Ensembl", "ENS[A-Z]*[EGPT][0-9]{11}(\\.[0-9]+)?", "Ensembl:ENST00000713680");
    r.add("circRNA", "circBase", "circBase", "[a-z]{3}_circ_[0-9]+", "circBase:hsa_circ_0018046");
    r.add("Chemical", "ChEBI", "CHEBI", "[0-9]+", "CHEBI:4021");
    r.add("Protein", "PRO", "PR", "[0-9]{9}|[A-Z0-9]+(-[0-9]+)?", "PR:Q8WXF3");
    r.add("Gene", "Entrez", "Entrez", "[0-9]+", "Entrez:1954");
    r.add("Cell", "CLO", "CLO", "[0-9]{7}", "CLO:0003725");
    r.add("GO term", "GO", "GO", "[0-9]{7}", "GO:0140657");
    r.add("Disease", "Mondo", "MONDO", "[0-9]{7}", "MONDO:0020683");
    r.add("Phenotype", "HPO", "HP", "[0-9]{7}", "HP:0040064");
    r.add("Anatomy", "Uberon", "UBERON", "[0-9]{7}", "UBERON:0002169");
    r.add("Vaccine", "VO", "VO", "[0-9]{7}", "VO:0010137");
    r.add("Pathway", "PW", "PW", "[0-9]{7}", "PW:0000035");
    r.add("Pathway", "Reactome", "Reactome", "R-[A-Z]{3}-[0-9]+", "Reactome:R-HSA-9837999");
    r.add("Pathway", "WikiPathways", "WikiPathways", "WP[0-9]+", "WikiPathways:WP5090");
    r.add("Sequence feature", "SO", "SO", "[0-9]{7}", "SO:0000276");
    r.add("Relation", "RO", "RO", "[0-9]{7}", "RO:0002436");
    r.add("Drug", "DrugBank", "DrugBank", "DB[0-9]{5}", "DrugBank:DB00945");
    return r;
  }();
  return registry;
}

void SchemeRegistry::add(std::string entity_kind, std::string name, std::string prefix, std::string local_pattern,
                         std::string example) {
  std::regex re("^(?:" + local_pattern + ")$");
  schemes_.push_back(Scheme{std::move(entity_kind), std::move(name), std::move(prefix), std::move(local_pattern),
                            std::move(example), std::move(re)});
}

const Scheme* SchemeRegistry::by_prefix(std::string_view prefix) const noexcept {
  for (const auto& s : schemes_)
    if (s.prefix == prefix) return &s;
  return nullptr;
}

const Scheme* SchemeRegistry::by_name(std::string_view name) const noexcept {
  const std::string lowered = text::to_lower(name);
  for (const auto& s : schemes_)
    if (text::to_lower(s.name) == lowered || text::to_lower(s.prefix) == lowered) return &s;
  return nullptr;
}

bool split_curie(std::string_view curie, std::string_view& prefix, std::string_view& local) noexcept {
  auto colon = curie.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == curie.size()) return false;
  prefix = curie.substr(0, colon);
  local = curie.substr(colon + 1);
  return true;
}

bool SchemeRegistry::is_valid_curie(std::string_view curie) const {
  std::string_view prefix, local;
  if (!split_curie(curie, prefix, local)) return false;
  const Scheme* s = by_prefix(prefix);
  return s && std::regex_match(local.begin(), local.end(), s->local_regex);
}

}  // namespace kgforge::ingest
