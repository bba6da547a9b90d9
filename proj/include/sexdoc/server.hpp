#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "sexdoc/export.hpp"

namespace sexdoc {

/// An exported manual held in memory, checked against its manifest.
struct ManualSnapshot {
  Manifest manifest;
  /// Quoted SHA-256 of manifest.json.
  std::string etag;
  /// Every manifest file plus manifest.json, by relative path.
  std::map<std::string, std::string, std::less<>> files;
  /// xdata.json records by topic key, byte-for-byte as stored.
  std::map<std::string, std::string, std::less<>> records;
};

/// Throws Error when a file is missing or does not match its checksum.
ManualSnapshot load_manual(const std::filesystem::path& dir);

struct HttpResponse {
  int status = 200;
  std::string content_type;
  std::string body;
};

/// Routes one request:
///   GET /api/index        xindex.json
///   GET /api/topic/KEY    the xdata.json record for KEY (400 malformed, 404 unknown)
///   GET /                 index.html
///   GET /PATH             any file the manifest lists
/// A matching If-None-Match yields 304 with an empty body.
HttpResponse handle_request(const ManualSnapshot& manual, std::string_view method, std::string_view path,
                            std::string_view if_none_match = {});

/// HTTP front end over an immutable snapshot.
class ManualServer {
 public:
  explicit ManualServer(ManualSnapshot manual);
  ~ManualServer();
  ManualServer(const ManualServer&) = delete;
  ManualServer& operator=(const ManualServer&) = delete;

  /// Binds `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sexdoc
