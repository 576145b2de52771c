#include "tracepart/service.hpp"

#include <httplib.h>

#include "tracepart/error.hpp"

namespace tracepart {

namespace {

using nlohmann::json;

ApiResponse ok(const json& doc) { return {200, doc.dump()}; }

ApiResponse fail(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump()};
}

std::optional<std::uint64_t> optional_revision(const json& body) {
  if (!body.contains("revision") || body["revision"].is_null()) return std::nullopt;
  if (!body["revision"].is_number_unsigned()) throw Error(ErrorKind::InvalidMove, "revision must be a non-negative integer");
  return body["revision"].get<std::uint64_t>();
}

json parse_body(std::string_view body) {
  if (body.empty()) return json::object();
  auto doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw Error(ErrorKind::InvalidMove, "request body must be a JSON object");
  return doc;
}

}  // namespace

ApiResponse Api::handle(std::string_view method, std::string_view path, std::string_view body) const {
  try {
    if (method == "GET" && path == "/api/state") return ok(session_.state());
    if (method == "GET" && path == "/api/metrics") return ok(session_.metrics());

    if (method == "POST" && path == "/api/move") {
      const auto req = parse_body(body);
      if (!req.contains("class") || !req["class"].is_string()) return fail(400, "\"class\" must be a string");
      if (!req.contains("to") || !req["to"].is_number_unsigned()) return fail(400, "\"to\" must be a partition index");
      const auto revision = optional_revision(req);
      if (!revision) return fail(400, "\"revision\" is required");
      return ok(session_.move(req["class"].get<std::string>(), req["to"].get<std::size_t>(), *revision));
    }
    if (method == "POST" && path == "/api/repartition") {
      const auto req = parse_body(body);
      if (!req.contains("n") || !req["n"].is_number_unsigned() || req["n"].get<std::size_t>() < 1) {
        return fail(400, "\"n\" must be a positive integer");
      }
      return ok(session_.repartition(req["n"].get<std::size_t>(), optional_revision(req)));
    }
    if (method == "POST" && path == "/api/reset") {
      return ok(session_.reset(optional_revision(parse_body(body))));
    }
    return fail(404, "no route for " + std::string(method) + " " + std::string(path));
  } catch (const Error& e) {
    return fail(e.kind() == ErrorKind::StaleRevision ? 409 : 400, e.what());
  }
}

struct HttpService::Impl {
  Api api;
  httplib::Server server;

  explicit Impl(Session& s) : api(s) {}
};

HttpService::HttpService(Session& session, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(session)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const auto r = impl_->api.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  for (const char* route : {"/api/state", "/api/metrics"}) impl_->server.Get(route, handler);
  for (const char* route : {"/api/move", "/api/repartition", "/api/reset"}) impl_->server.Post(route, handler);
  if (static_dir && std::filesystem::is_directory(*static_dir)) {
    impl_->server.set_mount_point("/", static_dir->string());
  }
}

HttpService::~HttpService() { stop(); }

bool HttpService::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int HttpService::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpService::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_) impl_->server.stop();
}

void HttpService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace tracepart
