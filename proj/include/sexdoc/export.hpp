#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sexdoc/pipeline.hpp"

namespace sexdoc {

inline constexpr std::string_view tool_version = "0.1.0";

/// Distinct topics linking to the topic + 2 per child + 10 when the topic
/// is at most two levels below the root.
std::map<SourceSymbol, std::uint64_t> importance_scores(const TopicSet& topics,
                                                        const std::map<SourceSymbol, PreparedTopic>& prepared);

struct SearchEntry {
  std::string key;
  std::string name;
  std::string short_text;
  std::uint64_t importance = 0;
};

/// One entry per topic, by importance descending then key ascending.
std::vector<SearchEntry> build_search_index(const Manual& manual);

/// The xdata.json value for one topic, in its on-disk bytes.
std::string topic_record_json(const Manual& manual, const SourceSymbol& name);

/// Whole-manual data: one `"KEY":{record}` per line, keys ascending, so each
/// record's bytes can be served on their own.
std::string xdata_json(const Manual& manual);

/// {"search":[[key,name,short_text,importance],...],"tree":{key:[child keys]}}
std::string xindex_json(const Manual& manual);

struct ManifestFile {
  std::string path;
  std::uint64_t bytes = 0;
  std::string sha256;
};

struct Manifest {
  std::string version;
  std::uint64_t topic_count = 0;
  std::uint64_t warning_count = 0;
  /// Sorted by path; never lists manifest.json itself.
  std::vector<ManifestFile> files;
};

std::string manifest_json(const Manifest& manifest);
Manifest parse_manifest(const std::string& text);

struct SaveOptions {
  bool force = false;
  bool archive = false;
  std::string title = "Manual";
};

/// Writes index.html, viewer.js, viewer.css, xdata.json, xindex.json,
/// optionally download/manual.zip, and manifest.json. A non-empty `outdir`
/// is refused unless `force`, which first removes the files a previous
/// manifest lists.
Manifest save_manual(const Manual& manual, const std::filesystem::path& outdir, const SaveOptions& options);

namespace viewer {
std::string index_html(const std::string& title);
std::string script();
std::string stylesheet();
}  // namespace viewer

}  // namespace sexdoc
