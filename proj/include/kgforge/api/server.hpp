#pragma once

#include <memory>
#include <string>

#include "kgforge/api/service.hpp"

namespace httplib {
class Server;
}

namespace kgforge::api {

struct ListenAddress {
  std::string host = "127.0.0.1";
  int port = 8080;
};

// "host:port", ":port" or "port". Throws Error(InvalidValue).
ListenAddress parse_listen_address(const std::string& text);

// HTTP front end for ApiService (routes under /api/v1/).
class HttpServer {
 public:
  explicit HttpServer(ApiService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Blocks until stop().
  bool listen(const ListenAddress& address);
  // Binds an ephemeral port and returns it; call listen_after_bind() to serve.
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  bool running() const;
  void wait_until_ready() const;

 private:
  ApiService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace kgforge::api
