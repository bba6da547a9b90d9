// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fail.
#include <deque>
#include <functional>
#include <iostream>
#include <regex>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "sexdoc/cli.hpp"
#include "sexdoc/doc_macros.hpp"
#include "sexdoc/export.hpp"
#include "sexdoc/hashing.hpp"
#include "sexdoc/preprocess.hpp"
#include "sexdoc/registry.hpp"
#include "sexdoc/server.hpp"
#include "sexdoc/topic_key.hpp"
#include "test_support.hpp"

using namespace sexdoc;
using nlohmann::json;
using testing::sym;
namespace fs = std::filesystem;

namespace {

struct Failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failed(what);
}

const std::vector<std::string> all_corpus = {"getopt/getopt.lisp",      "oslib/oslib.lisp",    "oslib/other.lisp",
                                             "arith/inequalities.lisp", "arith/local-variant.lisp",
                                             "vl/assignstmt.lisp",     "bitops/rotate.lisp"};

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

/// Blank-line separated paragraphs with whitespace collapsed.
std::vector<std::string> paragraphs(const std::vector<std::string>& lines) {
  std::vector<std::string> out;
  std::string current;
  for (const std::string& line : lines) {
    std::istringstream words(line);
    std::string word;
    bool any = false;
    while (words >> word) {
      if (!current.empty()) current += ' ';
      current += word;
      any = true;
    }
    if (!any && !current.empty()) {
      out.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

void see_elements(const std::vector<MarkupNode>& nodes, std::vector<std::pair<std::string, std::string>>& out) {
  for (const MarkupNode& n : nodes) {
    const MarkupElement* e = n.element();
    if (!e) continue;
    if (e->tag == "see") out.emplace_back(extract_text(e->children), *e->attribute("topic"));
    see_elements(e->children, out);
  }
}

std::set<SourceSymbol> parent_set(const Topic& t) { return {t.parents.begin(), t.parents.end()}; }

std::map<std::string, std::string> checksums(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      out[entry.path().lexically_relative(dir).generic_string()] = sha256_hex(testing::read_text(entry.path()));
    }
  }
  return out;
}

int cli(const std::vector<std::string>& args, const std::string& input = "", std::string* out_text = nullptr) {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, in, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

/// Names of @(def) blocks in exported HTML, in order.
std::vector<std::string> def_blocks(const std::string& html) {
  std::vector<std::string> out;
  static const std::regex block(R"(<p><b>[A-Za-z]+:</b> <tt>([^<]*)</tt></p><code>)");
  for (auto it = std::sregex_iterator(html.begin(), html.end(), block); it != std::sregex_iterator(); ++it) {
    std::string name = (*it)[1];
    for (std::size_t p; (p = name.find("&lt;")) != std::string::npos;) name.replace(p, 4, "<");
    for (std::size_t p; (p = name.find("&gt;")) != std::string::npos;) name.replace(p, 4, ">");
    out.push_back(name);
  }
  return out;
}

PreprocessContext context(const World& w, const TopicSet& ts, std::vector<Diagnostic>& diags) {
  PreprocessContext c;
  c.world = &w;
  c.topics = &ts;
  c.package = "ACL2";
  c.topic = sym("ACL2", "TOP");
  c.where = SourceSpan{"acceptance", 1, 0};
  c.diagnostics = &diags;
  return c;
}

TopicSet topics_of(const World& w) { return finalize(apply_events(elaborate_events(w.events)), sym("ACL2", "TOP")); }

const std::string link_targets =
    "(defxdoc top) (defxdoc std::defaggregate :parents (top)) (defxdoc common-lisp::car :parents (top))"
    "(defxdoc common-lisp::append :parents (top))";

void criterion_1() {
  const World w = testing::world_of_text({{"c1.lisp", link_targets}});
  const TopicSet ts = topics_of(w);
  std::vector<Diagnostic> diags;
  const std::string out = preprocess("@(see defaggregate)", context(w, ts, diags));
  expect(out == "<see topic='STD____DEFAGGREGATE'>defaggregate</see>", "got " + out);
  expect(diags.empty(), "unexpected warnings");
}

void criterion_2() {
  const World w = testing::world_of_text({{"c2.lisp", link_targets}});
  const TopicSet ts = topics_of(w);
  std::vector<Diagnostic> diags;
  const std::string out = preprocess("@('(car (append x y))')", context(w, ts, diags));
  const MarkupTree tree = parse_markup(out);
  expect(tree.children.size() == 1 && tree.children[0].element() && tree.children[0].element()->tag == "code",
         "not a single <code> fragment: " + out);
  std::vector<std::pair<std::string, std::string>> links;
  see_elements(tree.children, links);
  const std::vector<std::pair<std::string, std::string>> expected{{"car", "COMMON-LISP____CAR"},
                                                                  {"append", "COMMON-LISP____APPEND"}};
  expect(links == expected, "links differ: " + out);
  expect(extract_text(tree) == "(car (append x y))", "text changed: " + out);
}

void criterion_3() {
  const std::string getopt = testing::read_text(testing::corpus("getopt/getopt.lisp"));
  const std::size_t split = getopt.find("(defxdoc getopt");
  testing::TempDir tmp;
  testing::write_text(tmp / "base.lisp", getopt.substr(0, split));
  std::string out;
  const int code = cli({"--source", (tmp / "base.lisp").string(), "doc", "getopt", "--stdin"}, getopt.substr(split), &out);
  expect(code == exit_code::ok, "doc exited " + std::to_string(code));
  const std::vector<std::string> lines = lines_of(out);
  expect(lines.size() > 3, "output too short");
  expect(lines[0] == "ACL2::GETOPT -- Current Interactive Session", "header: " + lines[0]);
  expect(lines[1] == "Parents: INTERFACING-TOOLS.", "parents: " + lines[1]);
  const std::vector<std::string> expected{
      "A library for processing command-line options.",
      "Introduction",
      "Getopt is a tool for writing command-line programs in ACL2. It is similar in spirit to "
      "{Getopt::Long | http://perldoc.perl.org/Getopt/Long.html} for Perl, "
      "{Trollop | http://trollop.rubyforge.org/} for Ruby, and so on.",
      "We basically extend [defaggregate] with a command-line parsing layer. This has some nice consequences:"};
  const std::vector<std::string> got = paragraphs({lines.begin() + 2, lines.end()});
  expect(got == expected, "body differs:\n" + out);
}

void criterion_4() {
  const World w = testing::world_of({"oslib/oslib.lisp", "oslib/other.lisp"});
  const Registry r = apply_events(elaborate_events(w.events));
  const std::set<SourceSymbol> oslib{sym("OSLIB", "OSLIB")};
  for (const char* name : {"GETPID", "LS-SUBDIRS"}) {
    const Topic* t = r.find(sym("OSLIB", name));
    expect(t && parent_set(*t) == oslib, std::string(name) + " parents differ");
  }
  const Topic* temp = r.find(sym("OSLIB", "TEMPFILE"));
  expect(temp && temp->parents.empty(), "default parents leaked into other.lisp");
  const Manual m = testing::manual_of(w);
  for (const char* name : {"GETPID", "LS-SUBDIRS"}) {
    expect(parent_set(*m.topics.find(sym("OSLIB", name))) == oslib, std::string(name) + " parents differ after finalize");
  }
}

void criterion_5() {
  const std::vector<std::string> six{"<-0-minus",        "<-minus-zero",     "<-0-+-negative-1",
                                     "<-0-+-negative-2", "<-+-negative-0-1", "<-+-negative-0-2"};
  const std::string text = testing::read_text(testing::corpus("arith/inequalities.lisp"));
  const SourceSymbol section = sym("ACL2", "INEQUALITIES-OF-SUMS");
  const Manual m = testing::manual_of(testing::world_of_text({{"inequalities.lisp", text}}));
  const std::vector<std::string> got = def_blocks(m.prepared.at(section).long_html);
  expect(got == six, "def blocks differ (" + std::to_string(got.size()) + ")");

  std::string with_local = text;
  const std::size_t at = with_local.find("  (defthm <-minus-zero");
  with_local.insert(at, "  (local (defthm extra-local-lemma (equal (+ x 0) x)))\n\n");
  const Manual m2 = testing::manual_of(testing::world_of_text({{"inequalities.lisp", with_local}}));
  const std::vector<std::string> got2 = def_blocks(m2.prepared.at(section).long_html);
  expect(got2 == six, "local theorem changed the listing (" + std::to_string(got2.size()) + ")");
}

void criterion_6() {
  const Manual m = testing::manual_of(testing::world_of({"vl/assignstmt.lisp"}));
  std::set<SourceSymbol> produced;
  for (const auto& [name, topic] : m.topics.topics) {
    if (topic.origin.ends_with("assignstmt.lisp") && name != sym("VL", "VL-STMT-P")) produced.insert(name);
  }
  const SourceSymbol rec = sym("VL", "VL-ASSIGNSTMT-P");
  const std::set<SourceSymbol> expected{rec,
                                        sym("VL", "MAKE-VL-ASSIGNSTMT"),
                                        sym("VL", "VL-ASSIGNSTMT->TYPE"),
                                        sym("VL", "VL-ASSIGNSTMT->LVALUE"),
                                        sym("VL", "VL-ASSIGNSTMT->EXPR"),
                                        sym("VL", "VL-ASSIGNSTMT->LOC")};
  expect(produced == expected, "expected 6 topics, got " + std::to_string(produced.size()));
  expect(parent_set(*m.topics.find(rec)) == std::set<SourceSymbol>{sym("VL", "VL-STMT-P")}, "recognizer parent");
  for (const SourceSymbol& s : expected) {
    if (s != rec) expect(parent_set(*m.topics.find(s)) == std::set<SourceSymbol>{rec}, s.qualified() + " parent");
  }
}

void criterion_7() {
  const Manual m = testing::manual_of(testing::world_of({"bitops/rotate.lisp"}));
  const PreparedTopic& p = m.prepared.at(sym("ACL2", "ROTATE-LEFT"));
  const std::string text = extract_text(p.long_tree);
  for (const char* piece : {"x : integerp", "width : posp", "places : natp", "rotated : natp"}) {
    expect(text.find(piece) != std::string::npos, std::string("missing '") + piece + "'");
  }
  const std::vector<std::string> defs = def_blocks(p.long_html);
  expect(std::find(defs.begin(), defs.end(), "logbitp-of-rotate-left-split") != defs.end(), "missing split theorem");
  expect(std::find(defs.begin(), defs.end(), "rotate-left-by-zero") != defs.end(), "missing by-zero theorem");
  expect(std::find(defs.begin(), defs.end(), "logbitp-of-rotate-left-1") == defs.end(), "local lemma listed");
  expect(text.find("logbitp-of-rotate-left-1") == std::string::npos, "local lemma mentioned");
}

void criterion_8() {
  testing::TempDir tmp;
  std::vector<std::string> base;
  for (const std::string& f : all_corpus) {
    base.push_back("--source");
    base.push_back(testing::corpus(f).string());
  }
  std::vector<std::map<std::string, std::string>> sums;
  const std::vector<std::string> jobs{"1", "1", "8"};
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    std::vector<std::string> args = base;
    const fs::path out = tmp / ("out" + std::to_string(i));
    for (const std::string& a : {std::string("-j"), jobs[i], std::string("--archive"), std::string("--out"),
                                 out.string(), std::string("build")}) {
      args.push_back(a);
    }
    expect(cli(args) == exit_code::ok, "build " + std::to_string(i) + " failed");
    expect(fs::is_regular_file(out / "index.html"), "no top-level index.html");
    sums.push_back(checksums(out));
  }
  expect(sums[0].size() >= 7, "too few output files");
  expect(sums[0] == sums[1], "consecutive builds differ");
  expect(sums[0] == sums[2], "parallel build differs");
}

/// Fifty topics with awkward names, cross links and code.
std::string fifty_topic_corpus() {
  testing::Rng rng(50);
  std::vector<std::string> names{"top"};
  const std::vector<std::string> stems{"<-0-", "a->b-", "x*", "st::", "%n", "f.g-", "q?", "/w"};
  while (names.size() < 50) {
    std::string stem = stems[testing::below(rng, stems.size())];
    if (stem == "st::") stem = "std::s";
    names.push_back(stem + std::to_string(names.size()));
  }
  std::string src = "(defxdoc top :short \"Root &amp; friends.\")\n";
  for (std::size_t i = 1; i < names.size(); ++i) {
    const std::string parent = names[testing::below(rng, i)];
    const std::string link = names[testing::below(rng, names.size())];
    src += "(defxdoc " + names[i] + " :parents (" + parent + ") :short \"Topic " + std::to_string(i) +
           " &lt; é.\" :long \"<p>See @(see " + link + ") and @('(" + link + " x)').</p>\")\n";
  }
  return src;
}

void criterion_9() {
  testing::TempDir tmp;
  const Manual m = testing::manual_of(testing::world_of_text({{"fifty.lisp", fifty_topic_corpus()}}));
  expect(m.topics.topics.size() == 50, "corpus has " + std::to_string(m.topics.topics.size()) + " topics");
  save_manual(m, tmp / "manual", {});

  // The expected record for each key, from an independent parse of xdata.json.
  const json data = json::parse(testing::read_text(tmp / "manual/xdata.json"));
  expect(data.size() == 50, "xdata.json has " + std::to_string(data.size()) + " records");

  ManualServer server(load_manual(tmp / "manual"));
  const int port = server.bind("127.0.0.1", 0);
  expect(port > 0, "cannot bind");
  std::thread loop([&] { server.listen(); });
  std::string problem;
  {
    httplib::Client client("127.0.0.1", port);
    for (auto it = data.begin(); it != data.end() && problem.empty(); ++it) {
      auto res = client.Get("/api/topic/" + it.key());
      if (!res || res->status != 200) problem = "no 200 for " + it.key();
      else if (res->body != it.value().dump() || json::parse(res->body) != it.value()) problem = "body differs for " + it.key();
    }
    if (problem.empty()) {
      auto res = client.Get("/api/topic/NOPE____NOPE");
      if (!res || res->status != 404 || res->body != R"({"error":"unknown topic","key":"NOPE____NOPE"})") {
        problem = "unknown key not answered with the 404 error body";
      }
    }
  }
  server.stop();
  loop.join();
  expect(problem.empty(), problem);
}

std::string oracle_escape(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '-') {
      out.push_back(static_cast<char>(c));
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "_%X%X", c % 16, c / 16);
      out += buf;
    }
  }
  return out;
}

void criterion_10a() {
  testing::Rng rng(314159);
  for (int i = 0; i < 1000; ++i) {
    const MarkupTree tree = testing::random_tree(rng);
    const std::string s = serialize(tree);
    expect(parse_markup(s) == tree, "round trip failed: " + s);
  }
}

void criterion_10b() {
  testing::Rng rng(1997);
  std::map<std::string, SourceSymbol> seen;
  for (int i = 0; i < 10000; ++i) {
    const SourceSymbol s = testing::random_symbol(rng);
    const std::string key = encode_key(s);
    expect(key == oracle_escape(s.package) + "____" + oracle_escape(s.name), "encoding of " + s.qualified());
    expect(decode_key(key) == s, "decode of " + key);
    auto [it, fresh] = seen.emplace(key, s);
    expect(fresh || it->second == s, "collision on " + key);
  }
}

void criterion_10c() {
  testing::Rng rng(20140101);
  for (int i = 0; i < 1000; ++i) {
    const Form form = testing::random_form(rng, 4);
    const std::string printed = print_form(form, "ACL2");
    expect(read_single_form(printed, "ACL2") == form, "round trip failed: " + printed);
  }
}

void criterion_10d() {
  testing::TempDir tmp;
  testing::Rng rng(64);
  std::string random_docs = "(defconst *k* 3)";
  const std::vector<std::string> pieces = {"@(see top)", "@(see nowhere)", "@('(car x)')", "@({\n(append a b)\n})",
                                           "@(`(+ *k* 1)`)", "@(def *k*)", "@@ ", "@ ", "@(def gone)", "text "};
  for (int i = 0; i < 100; ++i) {
    std::string long_text;
    for (std::size_t k = testing::below(rng, 8); k > 0; --k) long_text += pieces[testing::below(rng, pieces.size())];
    random_docs += "(defxdoc r" + std::to_string(i) + " :parents (top) :long \"" + long_text + "\")\n";
  }
  std::vector<SourceText> sources;
  for (const std::string& f : all_corpus) sources.push_back({f, testing::read_text(testing::corpus(f))});
  sources.push_back({"random.lisp", random_docs});
  sources.push_back({"fifty.lisp", fifty_topic_corpus()});
  const Manual m = testing::manual_of(build_world_from_sources(sources, "ACL2"));
  save_manual(m, tmp / "out", {});
  const json data = json::parse(testing::read_text(tmp / "out/xdata.json"));
  std::size_t checked = 0;
  for (auto it = data.begin(); it != data.end(); ++it) {
    expect(it.value().at("long_html").get<std::string>().find("@(") == std::string::npos, "@( in " + it.key());
    ++checked;
  }
  expect(checked > 150, "too few topics checked");
}

void criterion_10e() {
  testing::Rng rng(5150);
  for (int g = 0; g < 200; ++g) {
    const std::size_t n = 1 + testing::below(rng, 25);
    std::string source;
    for (std::size_t i = 0; i < n; ++i) {
      source += "(defxdoc t" + std::to_string(i);
      if (!testing::chance(rng, 0.15)) {
        source += " :parents (";
        for (std::size_t j = testing::below(rng, 3) + 1; j > 0; --j) {
          const std::size_t pick = testing::below(rng, n + 3);
          source += pick < n ? "t" + std::to_string(pick) + " " : pick == n ? "top " : "ghost" + std::to_string(pick) + " ";
        }
        source += ")";
      }
      source += ")\n";
    }
    const TopicSet ts = topics_of(testing::world_of_text({{"g.lisp", source}}));

    // Acyclic: no topic reaches itself through child edges.
    for (const auto& [name, kids] : ts.children) {
      for (const SourceSymbol& kid : kids) {
        expect(testing::reachable(ts.children, kid).count(name) == 0, "cycle through " + name.qualified());
      }
    }
    // Root-reachable: every topic is reached from the root or a listed root.
    std::set<SourceSymbol> reached;
    for (const SourceSymbol& root : ts.roots) {
      for (const SourceSymbol& s : testing::reachable(ts.children, root)) reached.insert(s);
    }
    expect(ts.roots.front() == ts.root, "root not listed first");
    expect(reached.size() == ts.topics.size(), "unreachable topic in graph " + std::to_string(g));
    for (const auto& [name, topic] : ts.topics) {
      if (testing::reachable(ts.children, ts.root).count(name)) continue;
      bool warned = std::find(ts.roots.begin(), ts.roots.end(), name) != ts.roots.end();
      for (const Diagnostic& d : ts.warnings) warned = warned || (d.topic && *d.topic == name);
      expect(warned, name.qualified() + " is off the root without a warning or listing");
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"1 preprocessor see golden (exact string)", criterion_1},
      {"2 autolink golden (structural, links on car and append only)", criterion_2},
      {"3 text render golden (header, parents, paragraphs modulo wrapping)", criterion_3},
      {"4 default parents (exact set equality, no leak)", criterion_4},
      {"5 defsection collection (six defs in order, local excluded)", criterion_5},
      {"6 defaggregate fan-out (exactly 6 topics, exact parents)", criterion_6},
      {"7 define signature and definitions section", criterion_7},
      {"8 export layout and byte determinism (sha256, -j 1 vs -j 8)", criterion_8},
      {"9 server equivalence (exhaustive, 50 topics, 404 body)", criterion_9},
      {"10a markup round trip (1000 random trees)", criterion_10a},
      {"10b key injectivity (10^4 random symbols)", criterion_10b},
      {"10c reader round trip (1000 random forms)", criterion_10c},
      {"10d no @( in exported long_html", criterion_10d},
      {"10e finalized graphs acyclic and root-reachable (200 graphs)", criterion_10e},
  };
  int failures = 0;
  for (const auto& [label, run] : criteria) {
    std::string detail;
    try {
      run();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    std::cout << (detail.empty() ? "PASS" : "FAIL") << "  criterion " << label;
    if (!detail.empty()) {
      std::cout << ": " << detail;
      ++failures;
    }
    std::cout << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
