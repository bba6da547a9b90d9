#include "sexdoc/server.hpp"

#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "sexdoc/hashing.hpp"
#include "sexdoc/topic_key.hpp"

namespace sexdoc {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("manual file '" + path.generic_string() + "' is missing or unreadable");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::map<std::string, std::string, std::less<>> split_records(const std::string& xdata) {
  const Error layout("xdata.json does not have the one-record-per-line layout");
  if (!xdata.starts_with("{\n") || !xdata.ends_with("}\n")) throw layout;
  std::map<std::string, std::string, std::less<>> records;
  std::istringstream lines(xdata.substr(2, xdata.size() - 4));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.ends_with(",")) line.pop_back();
    if (line.empty() || line[0] != '"') throw layout;
    std::size_t close = 1;
    while (close < line.size() && line[close] != '"') close += line[close] == '\\' ? 2 : 1;
    if (close + 1 >= line.size() || line[close + 1] != ':') throw layout;
    std::string key = nlohmann::json::parse(line.substr(0, close + 1)).get<std::string>();
    std::string record = line.substr(close + 2);
    if (!nlohmann::json::accept(record)) throw layout;
    records.emplace(std::move(key), std::move(record));
  }
  if (nlohmann::json::parse(xdata).size() != records.size()) throw layout;
  return records;
}

std::string content_type_for(std::string_view path) {
  if (path.ends_with(".html")) return "text/html; charset=utf-8";
  if (path.ends_with(".js")) return "application/javascript; charset=utf-8";
  if (path.ends_with(".css")) return "text/css; charset=utf-8";
  if (path.ends_with(".json")) return "application/json";
  if (path.ends_with(".zip")) return "application/zip";
  return "application/octet-stream";
}

HttpResponse json_error(int status, const nlohmann::json& body) {
  return HttpResponse{status, "application/json", body.dump()};
}

}  // namespace

ManualSnapshot load_manual(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("manual directory '" + dir.generic_string() + "' does not exist");
  ManualSnapshot snapshot;
  const std::string manifest_text = read_file(dir / "manifest.json");
  snapshot.manifest = parse_manifest(manifest_text);
  snapshot.etag = "\"" + sha256_hex(manifest_text) + "\"";
  for (const ManifestFile& f : snapshot.manifest.files) {
    std::string bytes = read_file(dir / f.path);
    if (bytes.size() != f.bytes || sha256_hex(bytes) != f.sha256) {
      throw Error("manual file '" + f.path + "' does not match manifest.json");
    }
    snapshot.files.emplace(f.path, std::move(bytes));
  }
  for (const char* required : {"xdata.json", "xindex.json", "index.html"}) {
    if (!snapshot.files.count(required)) throw Error(std::string("manifest.json does not list ") + required);
  }
  snapshot.files.emplace("manifest.json", manifest_text);
  snapshot.records = split_records(snapshot.files.at("xdata.json"));
  return snapshot;
}

HttpResponse handle_request(const ManualSnapshot& manual, std::string_view method, std::string_view path,
                            std::string_view if_none_match) {
  if (method != "GET" && method != "HEAD") {
    return json_error(405, {{"error", "method not allowed"}});
  }
  if (!if_none_match.empty() && if_none_match == manual.etag) return HttpResponse{304, "", ""};

  constexpr std::string_view topic_prefix = "/api/topic/";
  if (path == "/api/index") {
    return HttpResponse{200, "application/json", manual.files.at("xindex.json")};
  }
  if (path.starts_with(topic_prefix)) {
    const std::string key(path.substr(topic_prefix.size()));
    if (!try_decode_key(key)) return json_error(400, {{"error", "malformed topic key"}, {"key", key}});
    auto it = manual.records.find(key);
    if (it == manual.records.end()) return json_error(404, {{"error", "unknown topic"}, {"key", key}});
    return HttpResponse{200, "application/json", it->second};
  }
  std::string_view file = path == "/" ? "index.html" : path.substr(path.starts_with('/') ? 1 : 0);
  auto it = manual.files.find(file);
  if (it == manual.files.end()) return json_error(404, {{"error", "not found"}, {"path", std::string(path)}});
  return HttpResponse{200, content_type_for(file), it->second};
}

struct ManualServer::Impl {
  ManualSnapshot manual;
  httplib::Server server;
};

ManualServer::ManualServer(ManualSnapshot manual) : impl_(std::make_unique<Impl>()) {
  impl_->manual = std::move(manual);
  auto handler = [impl = impl_.get()](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r =
        handle_request(impl->manual, req.method, req.path, req.get_header_value("If-None-Match"));
    res.status = r.status;
    res.set_header("ETag", impl->manual.etag);
    if (r.status != 304) res.set_content(r.body, r.content_type);
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Put(".*", handler);
  impl_->server.Patch(".*", handler);
  impl_->server.Delete(".*", handler);
  impl_->server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) res.set_content(nlohmann::json{{"error", "bad request"}}.dump(), "application/json");
  });
}

ManualServer::~ManualServer() = default;

int ManualServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void ManualServer::listen() { impl_->server.listen_after_bind(); }

void ManualServer::stop() { impl_->server.stop(); }

}  // namespace sexdoc
