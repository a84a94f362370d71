#include "kgforge/api/server.hpp"

#include "httplib.h"
#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"

namespace kgforge::api {

ListenAddress parse_listen_address(const std::string& text) {
  ListenAddress a;
  std::string_view port = text;
  if (auto colon = text.rfind(':'); colon != std::string::npos) {
    if (colon > 0) a.host = text.substr(0, colon);
    port = std::string_view(text).substr(colon + 1);
  }
  auto p = text::parse_int(port);
  if (!p || *p < 0 || *p > 65535) throw Error(Errc::InvalidValue, "invalid listen address '" + text + "'");
  a.port = static_cast<int>(*p);
  return a;
}

HttpServer::HttpServer(ApiService& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    Request r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.params.emplace(k, v);
    r.body = req.body;
    const Response out = service_.handle(r);
    res.status = out.status;
    for (const auto& [k, v] : out.headers) res.set_header(k, v);
    res.set_content(out.body, out.content_type);
  };
  server_->Get(R"(/api/v1/.*)", handler);
  server_->Post(R"(/api/v1/.*)", handler);
}

HttpServer::~HttpServer() = default;

bool HttpServer::listen(const ListenAddress& address) { return server_->listen(address.host, address.port); }

int HttpServer::bind_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool HttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

bool HttpServer::running() const { return server_->is_running(); }

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace kgforge::api
