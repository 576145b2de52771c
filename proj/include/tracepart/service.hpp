#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "tracepart/session.hpp"

namespace tracepart {

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

/// Transport-independent JSON API over a Session:
///   GET  /api/state
///   GET  /api/metrics
///   POST /api/move         {"class": str, "to": int, "revision": int}
///   POST /api/repartition  {"n": int, "revision"?: int}
///   POST /api/reset        {"revision"?: int}
/// Invalid requests answer 400, stale revisions 409.
class Api {
public:
  explicit Api(Session& session) : session_(session) {}

  ApiResponse handle(std::string_view method, std::string_view path, std::string_view body) const;

private:
  Session& session_;
};

/// HTTP front end for Api. Optionally serves static assets from `static_dir`.
class HttpService {
public:
  HttpService(Session& session, std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it; then call listen_after_bind().
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tracepart
