#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "kgforge/graph/property_graph.hpp"
#include "kgforge/ingest/schemes.hpp"
#include "kgforge/query/views.hpp"

namespace kgforge::api {

struct Request {
  std::string method;  // "GET" | "POST"
  std::string path;    // e.g. "/api/v1/node/id"
  std::multimap<std::string, std::string> params;
  std::string body;

  const std::string* param(const std::string& name) const;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

struct ServiceOptions {
  std::size_t result_cap = 10000;  // /query rows before 413
  std::size_t default_limit = 100;
  std::size_t max_limit = 10000;
};

inline constexpr const char* kApiBase = "/api/v1";
inline constexpr const char* kMultipartBoundary = "kgforge-view-boundary";

// Transport-independent request handling over an immutable snapshot.
// Requests hold their own reference to the snapshot they started with, so
// replace_snapshot never disturbs in-flight work.
class ApiService {
 public:
  explicit ApiService(std::shared_ptr<const graph::PropertyGraph> snapshot, ServiceOptions options = {},
                      const ingest::SchemeRegistry* schemes = &ingest::SchemeRegistry::standard());

  Response handle(const Request& request) const;

  void replace_snapshot(std::shared_ptr<const graph::PropertyGraph> snapshot);
  std::shared_ptr<const graph::PropertyGraph> snapshot() const;
  const ServiceOptions& options() const noexcept { return options_; }

 private:
  Response route(const graph::PropertyGraph& g, const Request& r) const;
  Response query(const graph::PropertyGraph& g, const Request& r) const;
  Response node(const graph::PropertyGraph& g, const Request& r) const;
  Response relationships(const graph::PropertyGraph& g, const Request& r) const;
  Response rel_metadata(const graph::PropertyGraph& g, const Request& r) const;
  Response schema(const graph::PropertyGraph& g) const;
  Response search(const graph::PropertyGraph& g, const Request& r) const;
  Response views(const graph::PropertyGraph& g, const Request& r, const std::string& part) const;
  Response health(const graph::PropertyGraph& g) const;
  graph::NodeHandle resolve_node(const graph::PropertyGraph& g, const Request& r) const;

  mutable std::mutex mutex_;
  std::shared_ptr<const graph::PropertyGraph> snapshot_;
  ServiceOptions options_;
  const ingest::SchemeRegistry* schemes_;
};

// Parses a /views body: {"labels": [...], "predicates": [...],
// "node_filter": "...", "edge_filter": "...", "include_properties": bool}.
query::ViewSpec parse_view_spec(const std::string& body);

Response error_response(int status, const std::string& code, const std::string& message);

}  // namespace kgforge::api
