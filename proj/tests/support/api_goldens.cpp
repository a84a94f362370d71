#include "api_goldens.hpp"

#include <cstdlib>

namespace kgtest {

namespace {

GoldenRequest get(std::string name, std::string schema, std::string path,
                  std::multimap<std::string, std::string> params) {
  GoldenRequest g{std::move(name), std::move(schema), {}};
  g.request.method = "GET";
  g.request.path = std::string(kgforge::api::kApiBase) + path;
  g.request.params = std::move(params);
  return g;
}

GoldenRequest post(std::string name, std::string schema, std::string path, std::string body) {
  GoldenRequest g{std::move(name), std::move(schema), {}};
  g.request.method = "POST";
  g.request.path = std::string(kgforge::api::kApiBase) + path;
  g.request.body = std::move(body);
  return g;
}

}  // namespace

std::vector<GoldenRequest> golden_requests() {
  return {
      post("query_uri_limit", "query", "/query", R"({"query": "MATCH (n) RETURN n.URI LIMIT 3"})"),
      post("query_mirna_disease", "query", "/query",
           R"({"query": "MATCH (m:miRNA)-[r]->(d:Disease) RETURN m.URI AS miRNA, TYPE(r) AS t, r.PubMedID, d.URI AS Disease"})"),
      get("node_mir106a", "node", "/node/id", {{"node_id", "URS00005F5B9E_9606"}, {"node_id_scheme", "RNAcentral"}}),
      get("node_mondo", "node", "/node/id", {{"node_id", "0005061"}, {"node_id_scheme", "Mondo"}}),
      get("relationships_linc00473", "relationships", "/relationships/id",
          {{"node_id", "URS00000537B8_9606"}, {"node_id_scheme", "RNAcentral"}}),
      get("relationships_mir106a_both", "relationships", "/relationships/id",
          {{"node_id", "URS00005F5B9E_9606"}, {"node_id_scheme", "RNAcentral"}, {"direction", "both"}}),
      get("relationships_mondo_in", "relationships", "/relationships/id",
          {{"node_id", "0005061"}, {"node_id_scheme", "Mondo"}, {"direction", "in"}}),
      get("rel_metadata_develops_from", "rel_metadata", "/rel_metadata", {{"rel_type", "develops_from"}}),
      get("rel_metadata_interacts_with", "rel_metadata", "/rel_metadata", {{"rel_type", "interacts_with"}}),
      get("search_let7", "search", "/search", {{"q", "let-7"}}),
      get("schema", "schema", "/schema", {}),
  };
}

std::string golden_path(const GoldenRequest& r) {
  return std::string(KGFORGE_TEST_DATA) + "/golden/api/" + r.name + ".json";
}

bool update_goldens_requested() {
  const char* v = std::getenv("KGFORGE_UPDATE_GOLDEN");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

}  // namespace kgtest
