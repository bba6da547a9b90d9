#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include "sexdoc/export.hpp"
#include "sexdoc/hashing.hpp"
#include "sexdoc/topic_key.hpp"
#include "sexdoc/zip_writer.hpp"
#include "test_support.hpp"

using namespace sexdoc;
using nlohmann::json;
using testing::sym;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> all_corpus = {"getopt/getopt.lisp",      "oslib/oslib.lisp",    "oslib/other.lisp",
                                             "arith/inequalities.lisp", "arith/local-variant.lisp",
                                             "vl/assignstmt.lisp",     "bitops/rotate.lisp"};

std::map<std::string, std::string> tree_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) out[entry.path().lexically_relative(dir).generic_string()] = testing::read_text(entry.path());
  }
  return out;
}

/// Bitwise CRC-32 (IEEE, reflected).
std::uint32_t crc32_oracle(const std::string& bytes) {
  std::uint32_t crc = 0xFFFFFFFFu;
  for (unsigned char c : bytes) {
    crc ^= c;
    for (int k = 0; k < 8; ++k) crc = (crc >> 1) ^ (0xEDB88320u & (0u - (crc & 1u)));
  }
  return ~crc;
}

std::uint32_t le(const std::string& s, std::size_t at, int n) {
  std::uint32_t v = 0;
  for (int i = n - 1; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[at + i]);
  return v;
}

/// Entries of a stored (uncompressed) zip, read from local headers.
std::vector<std::pair<std::string, std::string>> unzip_stored(const std::string& zip) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t at = 0;
  while (le(zip, at, 4) == 0x04034b50u) {
    REQUIRE(le(zip, at + 8, 2) == 0);
    const std::uint32_t crc = le(zip, at + 14, 4);
    const std::uint32_t size = le(zip, at + 18, 4);
    REQUIRE(le(zip, at + 22, 4) == size);
    const std::uint32_t name_len = le(zip, at + 26, 2);
    const std::uint32_t extra_len = le(zip, at + 28, 2);
    std::string name = zip.substr(at + 30, name_len);
    std::string data = zip.substr(at + 30 + name_len + extra_len, size);
    REQUIRE(crc32_oracle(data) == crc);
    out.emplace_back(std::move(name), std::move(data));
    at += 30 + name_len + extra_len + size;
  }
  REQUIRE(le(zip, at, 4) == 0x02014b50u);
  return out;
}

/// Topics whose BFS depth from `root` is at most two.
std::set<SourceSymbol> near_root(const TopicSet& ts) {
  std::set<SourceSymbol> out{ts.root};
  for (const SourceSymbol& a : ts.children.at(ts.root)) {
    out.insert(a);
    for (const SourceSymbol& b : ts.children.at(a)) out.insert(b);
  }
  return out;
}

}  // namespace

TEST_CASE("sha256 matches the standard test vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("importance: links, children and nearness to the root") {
  const World w = testing::world_of_text(
      {{"i.lisp",
        "(defxdoc top) (defxdoc a :parents (top)) (defxdoc b :parents (a)) (defxdoc c :parents (b))"
        "(defxdoc d :parents (c)) (defxdoc hub :parents (top))"
        "(defxdoc l1 :parents (hub) :long \"@(see d)\") (defxdoc l2 :parents (hub) :long \"@(see d) @(see d)\")"
        "(defxdoc l3 :parents (hub) :long \"@(see d)\") (defxdoc l4 :parents (hub) :long \"@(see d)\")"
        "(defxdoc deep :parents (l1))"}});
  const Manual m = testing::manual_of(w);
  CHECK(m.importance.at(sym("ACL2", "A")) == 12);
  CHECK(m.importance.at(sym("ACL2", "C")) == 2);
  CHECK(m.importance.at(sym("ACL2", "D")) == 4);
  CHECK(m.importance.at(sym("ACL2", "L1")) == 12);
  CHECK(m.importance.at(sym("ACL2", "DEEP")) == 0);

  const std::set<SourceSymbol> near = near_root(m.topics);
  for (const auto& [name, topic] : m.topics.topics) {
    std::set<SourceSymbol> linkers;
    for (const auto& [from, p] : m.prepared) {
      if (from != name && p.links.count(name)) linkers.insert(from);
    }
    const std::uint64_t expected = linkers.size() + 2 * m.topics.children.at(name).size() + (near.count(name) ? 10 : 0);
    CHECK(m.importance.at(name) == expected);
  }
}

TEST_CASE("children are ranked by importance then key") {
  const Manual m = testing::manual_of(testing::world_of(all_corpus));
  for (const auto& [parent, kids] : m.topics.children) {
    for (std::size_t i = 1; i < kids.size(); ++i) {
      const auto a = m.importance.at(kids[i - 1]);
      const auto b = m.importance.at(kids[i]);
      CHECK((a > b || (a == b && encode_key(kids[i - 1]) < encode_key(kids[i]))));
    }
  }
}

TEST_CASE("search index covers every topic in rank order") {
  const Manual m = testing::manual_of(testing::world_of({"getopt/getopt.lisp"}));
  const std::vector<SearchEntry> index = build_search_index(m);
  CHECK(index.size() == m.topics.topics.size());
  for (std::size_t i = 1; i < index.size(); ++i) {
    CHECK((index[i - 1].importance > index[i].importance ||
           (index[i - 1].importance == index[i].importance && index[i - 1].key < index[i].key)));
  }
  const auto getopt = std::find_if(index.begin(), index.end(), [](const SearchEntry& e) { return e.name == "GETOPT"; });
  REQUIRE(getopt != index.end());
  CHECK(getopt->key == "ACL2____GETOPT");
  CHECK(getopt->short_text == "A library for processing command-line options.");
}

TEST_CASE("xdata and xindex are referentially closed") {
  const Manual m = testing::manual_of(testing::world_of(all_corpus));
  const json data = json::parse(xdata_json(m));
  const json index = json::parse(xindex_json(m));
  CHECK(data.size() == m.topics.topics.size());
  CHECK(index.at("tree").size() == data.size());
  std::size_t links = 0;
  for (const auto& [key, record] : data.items()) {
    CHECK(encode_key(decode_key(key)) == key);
    for (const char* field : {"parents", "children"}) {
      for (const json& k : record.at(field)) CHECK(data.contains(k.get<std::string>()));
    }
    CHECK(record.at("children") == index.at("tree").at(key));
    const std::string long_html = record.at("long_html").get<std::string>();
    CHECK(long_html.find("@(") == std::string::npos);
    std::set<SourceSymbol> targets;
    collect_links(parse_markup(long_html).children, targets);
    collect_links(parse_markup(record.at("short_html").get<std::string>()).children, targets);
    for (const SourceSymbol& t : targets) {
      CHECK(data.contains(encode_key(t)));
      ++links;
    }
  }
  CHECK(links > 5);
  for (const json& row : index.at("search")) CHECK(data.contains(row.at(0).get<std::string>()));
}

TEST_CASE("xdata keeps one record per line") {
  const Manual m = testing::manual_of(testing::world_of({"getopt/getopt.lisp"}));
  const std::string text = xdata_json(m);
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  REQUIRE(lines.size() == m.topics.topics.size() + 2);
  CHECK(lines.front() == "{");
  CHECK(lines.back() == "}");
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    std::string line = lines[i];
    if (line.back() == ',') line.pop_back();
    const json pair = json::parse("{" + line + "}");
    const std::string key = pair.begin().key();
    CHECK(line.substr(line.find(':') + 1) == topic_record_json(m, decode_key(key)));
  }
}

TEST_CASE("save_manual writes the layout and a matching manifest") {
  const Manual m = testing::manual_of(testing::world_of({"getopt/getopt.lisp"}));
  testing::TempDir tmp;
  const Manifest manifest = save_manual(m, tmp / "out", {false, true, "Getopt"});
  const auto files = tree_bytes(tmp / "out");
  std::set<std::string> names;
  for (const auto& [path, bytes] : files) names.insert(path);
  CHECK(names == std::set<std::string>{"index.html", "viewer.css", "viewer.js", "xdata.json", "xindex.json",
                                       "download/manual.zip", "manifest.json"});
  CHECK(parse_manifest(files.at("manifest.json")).files.size() == manifest.files.size());
  CHECK(manifest.topic_count == m.topics.topics.size());
  for (const ManifestFile& f : manifest.files) {
    CHECK(files.at(f.path).size() == f.bytes);
    CHECK(sha256_hex(files.at(f.path)) == f.sha256);
  }
  CHECK(files.at("index.html").find("<title>Getopt</title>") != std::string::npos);

  const auto entries = unzip_stored(files.at("download/manual.zip"));
  std::vector<std::string> zipped;
  for (const auto& [name, data] : entries) {
    zipped.push_back(name);
    CHECK(files.at(name) == data);
  }
  CHECK(zipped == std::vector<std::string>{"index.html", "viewer.css", "viewer.js", "xdata.json", "xindex.json"});
}

TEST_CASE("builds are byte-identical regardless of thread count") {
  testing::TempDir tmp;
  for (unsigned jobs : {1u, 1u, 4u}) {
    const Manual m = testing::manual_of(testing::world_of(all_corpus, "ACL2", jobs), "ACL2", jobs);
    save_manual(m, tmp / ("out" + std::to_string(jobs)), {true, true, "All"});
    CHECK(tree_bytes(tmp / "out1") == tree_bytes(tmp / ("out" + std::to_string(jobs))));
  }
}

TEST_CASE("an occupied output directory needs force, which removes only listed files") {
  const Manual m = testing::manual_of(testing::world_of({"getopt/getopt.lisp"}));
  testing::TempDir tmp;
  testing::write_text(tmp / "out/notes.txt", "keep me");
  CHECK_THROWS_AS(save_manual(m, tmp / "out", {}), Error);
  CHECK_FALSE(fs::exists(tmp / "out/index.html"));
  save_manual(m, tmp / "out", {true, true, "T"});
  CHECK(fs::exists(tmp / "out/download/manual.zip"));
  save_manual(m, tmp / "out", {true, false, "T"});
  CHECK(testing::read_text(tmp / "out/notes.txt") == "keep me");
  CHECK_FALSE(fs::exists(tmp / "out/download"));
  CHECK(fs::exists(tmp / "out/index.html"));
  testing::write_text(tmp / "file", "x");
  CHECK_THROWS_AS(save_manual(m, tmp / "file", {true, false, "T"}), Error);
}

TEST_CASE("manifest round trips and rejects garbage") {
  Manifest m{"0.1.0", 3, 1, {{"a", 1, "00"}, {"b/c", 2, "ff"}}};
  const Manifest back = parse_manifest(manifest_json(m));
  CHECK(back.version == m.version);
  CHECK(back.topic_count == 3);
  CHECK(back.warning_count == 1);
  REQUIRE(back.files.size() == 2);
  CHECK(back.files[1].path == "b/c");
  CHECK_THROWS_AS(parse_manifest("{"), Error);
  CHECK_THROWS_AS(parse_manifest("{\"version\":1}"), Error);
}
