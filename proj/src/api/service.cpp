#include "kgforge/api/service.hpp"

#include <set>
#include <sstream>

#include "kgforge/api/rendering.hpp"
#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"
#include "kgforge/query/evaluator.hpp"

namespace kgforge::api {

namespace {

// Thrown inside handlers for non-domain request problems.
struct HttpError {
  int status;
  std::string code;
  std::string message;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Response json_response(const Json& j, int status = 200) {
  Response r;
  r.status = status;
  r.body = dump(j);
  return r;
}

int status_for(Errc c) {
  switch (c) {
    case Errc::UnknownCurie:
    case Errc::UnknownHandle:
      return 404;
    case Errc::NotFrozen:
      return 503;
    default:
      return 400;
  }
}

const std::string& require_param(const Request& r, const std::string& name) {
  const auto* v = r.param(name);
  if (v == nullptr || v->empty()) throw HttpError{400, "MissingParameter", "missing query parameter '" + name + "'"};
  return *v;
}

std::size_t size_param(const Request& r, const std::string& name, std::size_t fallback, std::size_t max) {
  const auto* v = r.param(name);
  if (v == nullptr) return fallback;
  auto n = text::parse_int(*v);
  if (!n || *n < 0) throw HttpError{400, "InvalidParameter", "'" + name + "' must be a non-negative integer"};
  return std::min<std::size_t>(static_cast<std::size_t>(*n), max);
}

}  // namespace

const std::string* Request::param(const std::string& name) const {
  auto it = params.find(name);
  return it == params.end() ? nullptr : &it->second;
}

Response error_response(int status, const std::string& code, const std::string& message) {
  Json j;
  j["error"] = code;
  j["message"] = message;
  return json_response(j, status);
}

ApiService::ApiService(std::shared_ptr<const graph::PropertyGraph> snapshot, ServiceOptions options,
                       const ingest::SchemeRegistry* schemes)
    : snapshot_(std::move(snapshot)), options_(options), schemes_(schemes) {}

void ApiService::replace_snapshot(std::shared_ptr<const graph::PropertyGraph> snapshot) {
  std::lock_guard lock(mutex_);
  snapshot_ = std::move(snapshot);
}

std::shared_ptr<const graph::PropertyGraph> ApiService::snapshot() const {
  std::lock_guard lock(mutex_);
  return snapshot_;
}

Response ApiService::handle(const Request& request) const {
  const auto g = snapshot();
  if (!g || !g->frozen()) return error_response(503, "NoSnapshot", "no frozen snapshot loaded");
  try {
    return route(*g, request);
  } catch (const HttpError& e) {
    return error_response(e.status, e.code, e.message);
  } catch (const SyntaxError& e) {
    Json j;
    j["error"] = "SyntaxError";
    j["message"] = e.what();
    j["position"] = e.position();
    return json_response(j, 400);
  } catch (const Error& e) {
    return error_response(status_for(e.code()), std::string(errc_name(e.code())), e.what());
  } catch (const std::exception& e) {
    return error_response(500, "Internal", e.what());
  }
}

Response ApiService::route(const graph::PropertyGraph& g, const Request& r) const {
  std::string path = r.path;
  const std::string base = kApiBase;
  if (path.compare(0, base.size(), base) != 0) throw HttpError{404, "NotFound", "no route for " + path};
  path.erase(0, base.size());
  while (path.size() > 1 && path.back() == '/') path.pop_back();

  const bool get = r.method == "GET", post = r.method == "POST";
  if (path == "/query" && post) return query(g, r);
  if (path == "/node/id" && get) return node(g, r);
  if (path == "/relationships/id" && get) return relationships(g, r);
  if (path == "/rel_metadata" && get) return rel_metadata(g, r);
  if (path == "/schema" && get) return schema(g);
  if (path == "/search" && get) return search(g, r);
  if (path == "/health" && get) return health(g);
  if (post && (path == "/views" || path == "/views/nodes.csv" || path == "/views/edges.csv" ||
               path == "/views/preview"))
    return views(g, r, path == "/views" ? "" : path.substr(7));
  static const std::set<std::string> known = {"/query",  "/node/id", "/relationships/id", "/rel_metadata",
                                              "/schema", "/search",  "/health",           "/views",
                                              "/views/nodes.csv", "/views/edges.csv", "/views/preview"};
  if (known.count(path)) throw HttpError{405, "MethodNotAllowed", r.method + " not allowed on " + path};
  throw HttpError{404, "NotFound", "no route for " + r.path};
}

Response ApiService::query(const graph::PropertyGraph& g, const Request& r) const {
  Json body;
  try {
    body = Json::parse(r.body);
  } catch (const nlohmann::json::exception&) {
    throw HttpError{400, "MalformedBody", "request body is not valid JSON"};
  }
  if (!body.is_object() || !body.contains("query") || !body["query"].is_string())
    throw HttpError{400, "MalformedBody", "body must be an object with a string 'query'"};
  const auto table = query::run_query(g, body["query"].get<std::string>());
  if (table.rows.size() > options_.result_cap)
    throw HttpError{413, "ResultTooLarge",
                    std::to_string(table.rows.size()) + " rows exceed the cap of " + std::to_string(options_.result_cap)};
  return json_response(render_table(table));
}

graph::NodeHandle ApiService::resolve_node(const graph::PropertyGraph& g, const Request& r) const {
  const auto& id = require_param(r, "node_id");
  const auto& scheme_name = require_param(r, "node_id_scheme");
  const auto* scheme = schemes_->by_name(scheme_name);
  if (scheme == nullptr) throw HttpError{400, "UnknownScheme", "unknown identification scheme '" + scheme_name + "'"};
  const std::string curie = scheme->prefix + ":" + id;
  auto h = g.find(curie);
  if (!h) throw HttpError{404, "UnknownNode", "no node " + curie};
  return *h;
}

Response ApiService::node(const graph::PropertyGraph& g, const Request& r) const {
  return json_response(render_node(g.node(resolve_node(g, r))));
}

Response ApiService::relationships(const graph::PropertyGraph& g, const Request& r) const {
  const auto h = resolve_node(g, r);
  graph::Direction dir = graph::Direction::Both;
  if (const auto* d = r.param("direction")) {
    if (*d == "in")
      dir = graph::Direction::In;
    else if (*d == "out")
      dir = graph::Direction::Out;
    else if (*d != "both")
      throw HttpError{400, "InvalidParameter", "direction must be in, out or both"};
  }
  const auto limit = size_param(r, "limit", options_.default_limit, options_.max_limit);
  const auto offset = size_param(r, "offset", 0, std::numeric_limits<std::size_t>::max());
  const auto all = g.neighbors(h, dir);
  Json rels = Json::array();
  for (std::size_t i = offset; i < all.size() && i - offset < limit; ++i) rels.push_back(render_relationship(g, all[i]));
  Json j;
  j["relationships"] = std::move(rels);
  auto resp = json_response(j);
  resp.headers["X-Total-Count"] = std::to_string(all.size());
  return resp;
}

Response ApiService::rel_metadata(const graph::PropertyGraph& g, const Request& r) const {
  const auto& type = require_param(r, "rel_type");
  auto it = g.predicate_index().find(type);
  if (it == g.predicate_index().end() || it->second.empty())
    throw HttpError{404, "UnknownRelationshipType", "no relationship type '" + type + "'"};
  std::set<std::string> names;
  for (auto id : it->second)
    for (const auto& [name, values] : g.edge(id).properties) names.insert(name);
  Json j;
  j["relationship_type"] = type;
  j["properties"] = std::vector<std::string>(names.begin(), names.end());
  j["total_count"] = it->second.size();
  return json_response(j);
}

Response ApiService::schema(const graph::PropertyGraph& g) const {
  Json labels = Json::array(), predicates = Json::array(), types = Json::array();
  for (const auto& [label, nodes] : g.label_index())
    if (!nodes.empty()) labels.push_back({{"label", label}, {"count", nodes.size()}});
  for (const auto& [pred, edges] : g.predicate_index()) {
    if (edges.empty()) continue;
    std::set<std::string> props;
    for (auto id : edges)
      for (const auto& [name, v] : g.edge(id).properties) props.insert(name);
    predicates.push_back({{"predicate", pred}, {"count", edges.size()}, {"properties", props}});
  }
  for (const auto& [key, count] : query::view_stats(g).edge_type_counts) {
    const auto& [src, dst, pred] = key;
    types.push_back({{"source_label", src}, {"target_label", dst}, {"predicate", pred}, {"count", count}});
  }
  Json j;
  j["node_count"] = g.node_count();
  j["edge_count"] = g.edge_count();
  j["labels"] = std::move(labels);
  j["predicates"] = std::move(predicates);
  j["edge_types"] = std::move(types);
  return json_response(j);
}

Response ApiService::search(const graph::PropertyGraph& g, const Request& r) const {
  const auto& q = require_param(r, "q");
  const auto limit = size_param(r, "limit", options_.default_limit, options_.max_limit);
  const auto offset = size_param(r, "offset", 0, std::numeric_limits<std::size_t>::max());
  Json hits = Json::array();
  std::size_t matched = 0;
  for (auto h : g.node_handles()) {
    const auto& n = g.node(h);
    bool hit = text::contains_icase(n.curie, q);
    if (!hit)
      if (const auto* label = n.properties.find("Label"))
        for (const auto& l : *label) hit = hit || text::contains_icase(l, q);
    if (!hit) continue;
    if (matched++ < offset) continue;
    if (hits.size() < limit) hits.push_back(render_node_stub(n));
  }
  Json j;
  j["results"] = std::move(hits);
  auto resp = json_response(j);
  resp.headers["X-Total-Count"] = std::to_string(matched);
  return resp;
}

query::ViewSpec parse_view_spec(const std::string& body) {
  Json j;
  try {
    j = Json::parse(body);
  } catch (const nlohmann::json::exception&) {
    throw Error(Errc::InvalidValue, "request body is not valid JSON");
  }
  if (!j.is_object()) throw Error(Errc::InvalidValue, "view spec must be a JSON object");
  query::ViewSpec spec;
  auto strings = [&](const char* key, std::set<std::string, std::less<>>& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_array()) throw Error(Errc::InvalidValue, std::string(key) + " must be an array");
    for (const auto& v : j[key]) {
      if (!v.is_string()) throw Error(Errc::InvalidValue, std::string(key) + " must hold strings");
      out.insert(v.get<std::string>());
    }
  };
  auto string = [&](const char* key, std::string& out) {
    if (!j.contains(key) || j[key].is_null()) return;
    if (!j[key].is_string()) throw Error(Errc::InvalidValue, std::string(key) + " must be a string");
    out = j[key].get<std::string>();
  };
  for (const auto& [k, v] : j.items()) {
    static const std::set<std::string> keys = {"labels", "predicates", "node_filter", "edge_filter",
                                               "include_properties"};
    if (!keys.count(k)) throw Error(Errc::InvalidValue, "unknown view field '" + k + "'");
  }
  strings("labels", spec.labels);
  strings("predicates", spec.predicates);
  string("node_filter", spec.node_filter);
  string("edge_filter", spec.edge_filter);
  if (j.contains("include_properties")) {
    if (!j["include_properties"].is_boolean()) throw Error(Errc::InvalidValue, "include_properties must be a boolean");
    spec.include_properties = j["include_properties"].get<bool>();
  }
  return spec;
}

Response ApiService::views(const graph::PropertyGraph& g, const Request& r, const std::string& part) const {
  const auto spec = parse_view_spec(r.body);
  const auto view = query::extract_view(g, spec);
  if (part == "preview") {
    const auto st = query::view_stats(view);
    Json types = Json::array();
    for (const auto& [key, count] : st.edge_type_counts)
      types.push_back({{"source_label", std::get<0>(key)}, {"target_label", std::get<1>(key)},
                       {"predicate", std::get<2>(key)}, {"count", count}});
    Json j;
    j["node_count"] = view.node_count();
    j["edge_count"] = view.edge_count();
    j["label_counts"] = st.label_counts;
    j["edge_types"] = std::move(types);
    return json_response(j);
  }
  std::ostringstream nodes, edges;
  query::write_nodes_csv(nodes, view);
  query::write_edges_csv(edges, view);
  Response resp;
  if (part == "nodes.csv" || part == "edges.csv") {
    resp.content_type = "text/csv; charset=utf-8";
    resp.headers["Content-Disposition"] = "attachment; filename=\"" + part + "\"";
    resp.body = part == "nodes.csv" ? nodes.str() : edges.str();
    return resp;
  }
  const std::string b = kMultipartBoundary;
  std::string body;
  auto add_part = [&](const std::string& name, const std::string& content) {
    body += "--" + b + "\r\n";
    body += "Content-Type: text/csv; charset=utf-8\r\n";
    body += "Content-Disposition: attachment; filename=\"" + name + "\"\r\n\r\n";
    body += content;
    body += "\r\n";
  };
  add_part("nodes.csv", nodes.str());
  add_part("edges.csv", edges.str());
  body += "--" + b + "--\r\n";
  resp.content_type = "multipart/mixed; boundary=" + b;
  resp.body = std::move(body);
  return resp;
}

Response ApiService::health(const graph::PropertyGraph& g) const {
  Json j;
  j["status"] = "ok";
  j["node_count"] = g.node_count();
  j["edge_count"] = g.edge_count();
  return json_response(j);
}

}  // namespace kgforge::api
