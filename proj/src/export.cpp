#include "sexdoc/export.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "sexdoc/hashing.hpp"
#include "sexdoc/topic_key.hpp"
#include "sexdoc/zip_writer.hpp"

namespace sexdoc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view archive_path = "download/manual.zip";

std::string dump(const json& value) { return value.dump(-1, ' ', false, json::error_handler_t::strict); }

json key_list(const std::vector<SourceSymbol>& names) {
  json out = json::array();
  for (const SourceSymbol& name : names) out.push_back(encode_key(name));
  return out;
}

void write_file(const fs::path& path, const std::string& bytes) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.generic_string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("cannot write '" + path.generic_string() + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.generic_string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void clear_previous(const fs::path& outdir, bool force) {
  if (!fs::exists(outdir)) return;
  if (!fs::is_directory(outdir)) throw Error("output path '" + outdir.generic_string() + "' is not a directory");
  if (fs::is_empty(outdir)) return;
  if (!force) {
    throw Error("output directory '" + outdir.generic_string() + "' is not empty; use --force to overwrite");
  }
  const fs::path manifest_path = outdir / "manifest.json";
  if (!fs::exists(manifest_path)) return;
  const Manifest previous = parse_manifest(read_file(manifest_path));
  for (const ManifestFile& f : previous.files) {
    const fs::path p = outdir / fs::path(f.path).lexically_normal();
    if (p.lexically_relative(outdir).string().starts_with("..")) continue;
    fs::remove(p);
  }
  fs::remove(outdir / archive_path);
  fs::remove(manifest_path);
  const fs::path download = (outdir / archive_path).parent_path();
  if (fs::exists(download) && fs::is_empty(download)) fs::remove(download);
}

}  // namespace

std::map<SourceSymbol, std::uint64_t> importance_scores(const TopicSet& topics,
                                                        const std::map<SourceSymbol, PreparedTopic>& prepared) {
  std::map<SourceSymbol, std::uint64_t> score;
  for (const auto& [name, topic] : topics.topics) score[name] = 2 * topics.children.at(name).size();
  for (const auto& [name, p] : prepared) {
    for (const SourceSymbol& target : p.links) {
      if (target != name && score.count(target)) ++score[target];
    }
  }
  std::map<SourceSymbol, int> depth{{topics.root, 0}};
  std::deque<SourceSymbol> queue{topics.root};
  while (!queue.empty()) {
    const SourceSymbol node = queue.front();
    queue.pop_front();
    if (depth[node] == 2) continue;
    for (const SourceSymbol& kid : topics.children.at(node)) {
      if (depth.emplace(kid, depth[node] + 1).second) queue.push_back(kid);
    }
  }
  for (const auto& [name, d] : depth) score[name] += 10;
  return score;
}

std::vector<SearchEntry> build_search_index(const Manual& manual) {
  std::vector<SearchEntry> entries;
  for (const auto& [name, p] : manual.prepared) {
    entries.push_back(SearchEntry{p.key, name.name, extract_text(p.short_tree), manual.importance.at(name)});
  }
  std::sort(entries.begin(), entries.end(), [](const SearchEntry& a, const SearchEntry& b) {
    if (a.importance != b.importance) return a.importance > b.importance;
    return a.key < b.key;
  });
  return entries;
}

std::string topic_record_json(const Manual& manual, const SourceSymbol& name) {
  const Topic& topic = manual.topics.topics.at(name);
  const PreparedTopic& p = manual.prepared.at(name);
  json record = {
      {"name", name.name},
      {"package", name.package},
      {"parents", key_list(topic.parents)},
      {"children", key_list(manual.topics.children.at(name))},
      {"short_html", p.short_html},
      {"long_html", p.long_html},
      {"origin", topic.origin},
      {"importance", manual.importance.at(name)},
  };
  return dump(record);
}

std::string xdata_json(const Manual& manual) {
  std::vector<std::pair<std::string, SourceSymbol>> keyed;
  for (const auto& [name, p] : manual.prepared) keyed.emplace_back(p.key, name);
  std::sort(keyed.begin(), keyed.end());
  std::string out = "{\n";
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    out += dump(json(keyed[i].first)) + ":" + topic_record_json(manual, keyed[i].second);
    out += i + 1 < keyed.size() ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

std::string xindex_json(const Manual& manual) {
  json search = json::array();
  for (const SearchEntry& e : build_search_index(manual)) {
    search.push_back(json::array({e.key, e.name, e.short_text, e.importance}));
  }
  json tree = json::object();
  for (const auto& [name, kids] : manual.topics.children) tree[encode_key(name)] = key_list(kids);
  return dump(json{{"search", std::move(search)}, {"tree", std::move(tree)}}) + "\n";
}

std::string manifest_json(const Manifest& manifest) {
  json files = json::array();
  for (const ManifestFile& f : manifest.files) {
    files.push_back(json{{"path", f.path}, {"bytes", f.bytes}, {"sha256", f.sha256}});
  }
  json doc = {{"version", manifest.version},
              {"topic_count", manifest.topic_count},
              {"warning_count", manifest.warning_count},
              {"files", std::move(files)}};
  return doc.dump(2) + "\n";
}

Manifest parse_manifest(const std::string& text) {
  try {
    const json doc = json::parse(text);
    Manifest m;
    m.version = doc.at("version").get<std::string>();
    m.topic_count = doc.at("topic_count").get<std::uint64_t>();
    m.warning_count = doc.at("warning_count").get<std::uint64_t>();
    for (const json& f : doc.at("files")) {
      m.files.push_back(ManifestFile{f.at("path").get<std::string>(), f.at("bytes").get<std::uint64_t>(),
                                     f.at("sha256").get<std::string>()});
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed manifest: ") + e.what());
  }
}

Manifest save_manual(const Manual& manual, const fs::path& outdir, const SaveOptions& options) {
  clear_previous(outdir, options.force);

  std::vector<std::pair<std::string, std::string>> files = {
      {"index.html", viewer::index_html(options.title)},
      {"viewer.css", viewer::stylesheet()},
      {"viewer.js", viewer::script()},
      {"xdata.json", xdata_json(manual)},
      {"xindex.json", xindex_json(manual)},
  };
  std::sort(files.begin(), files.end());
  if (options.archive) files.emplace_back(std::string(archive_path), make_zip(files));
  std::sort(files.begin(), files.end());

  Manifest manifest;
  manifest.version = std::string(tool_version);
  manifest.topic_count = manual.topics.topics.size();
  manifest.warning_count = manual.warnings.size();
  fs::create_directories(outdir);
  for (const auto& [path, bytes] : files) {
    write_file(outdir / path, bytes);
    manifest.files.push_back(ManifestFile{path, bytes.size(), sha256_hex(bytes)});
  }
  write_file(outdir / "manifest.json", manifest_json(manifest));
  return manifest;
}

}  // namespace sexdoc
