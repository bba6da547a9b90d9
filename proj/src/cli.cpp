#include "sexdoc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <thread>

#include "CLI11.hpp"
#include "sexdoc/config.hpp"
#include "sexdoc/export.hpp"
#include "sexdoc/pipeline.hpp"
#include "sexdoc/render_text.hpp"
#include "sexdoc/server.hpp"
#include "sexdoc/topic_key.hpp"

namespace sexdoc {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view interactive_origin = "Current Interactive Session";

struct Options {
  std::string config;
  std::vector<std::string> sources;
  std::string package;
  std::string out;
  unsigned jobs = 0;
  bool force = false;
  bool strict_lint = false;
  bool archive = false;
  std::string topic;
  bool stdin_forms = false;
  bool build_first = false;
  int port = 8372;
  std::string host = "127.0.0.1";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ProjectConfig resolve_config(const Options& opts) {
  std::string path = opts.config;
  if (path.empty()) {
    if (const char* env = std::getenv("SEXDOC_CONFIG"); env && *env) path = env;
  }
  if (path.empty() && opts.sources.empty() && fs::exists("sexdoc.cfg")) path = "sexdoc.cfg";

  ProjectConfig cfg;
  if (!path.empty()) {
    cfg = load_config(path);
  } else if (opts.sources.empty()) {
    throw UsageError("no project: pass --config, set SEXDOC_CONFIG, add ./sexdoc.cfg or give --source files");
  }
  if (!opts.sources.empty()) {
    cfg.sources = opts.sources;
    cfg.base_dir = ".";
  }
  if (!opts.package.empty()) {
    const std::string previous = cfg.package;
    cfg.package = upcase(opts.package);
    if (cfg.root && cfg.root->package == previous && path.empty()) cfg.root.reset();
  }
  if (!opts.out.empty()) cfg.out = opts.out;
  cfg.force = cfg.force || opts.force;
  cfg.strict_lint = cfg.strict_lint || opts.strict_lint;
  cfg.archive = cfg.archive || opts.archive;
  return cfg;
}

unsigned job_count(const Options& opts) {
  if (opts.jobs > 0) return opts.jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

Manual compile(const ProjectConfig& cfg, const Options& opts, const std::string& extra_source) {
  std::vector<SourceText> sources;
  for (const fs::path& p : expand_sources(cfg.sources, cfg.base_dir)) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read source file '" + p.generic_string() + "'");
    sources.push_back(SourceText{p.generic_string(), std::string(std::istreambuf_iterator<char>(in), {})});
  }
  if (!extra_source.empty()) sources.push_back(SourceText{std::string(interactive_origin), extra_source});
  const World world = build_world_from_sources(sources, cfg.package, job_count(opts));
  return compile_manual(world, PipelineOptions{cfg.package, cfg.root_symbol(), job_count(opts)});
}

void print_warnings(const Manual& manual, std::ostream& err) {
  for (const Diagnostic& d : manual.warnings) err << d.format() << "\n";
}

bool strict_failures(const Manual& manual, std::ostream& err) {
  std::size_t count = 0;
  for (const Diagnostic& d : manual.warnings) count += is_link_problem(d) ? 1 : 0;
  if (count == 0) return false;
  err << "sexdoc: error: --strict-lint: " << count << " link problem(s)\n";
  return true;
}

int cmd_build(const Options& opts, std::ostream& err) {
  const ProjectConfig cfg = resolve_config(opts);
  const Manual manual = compile(cfg, opts, "");
  print_warnings(manual, err);
  if (cfg.strict_lint && strict_failures(manual, err)) return exit_code::content_error;
  save_manual(manual, cfg.out, SaveOptions{cfg.force, cfg.archive, cfg.title});
  err << "sexdoc: wrote " << manual.topics.topics.size() << " topics to " << cfg.out.generic_string() << " ("
      << manual.warnings.size() << " warning(s))\n";
  return exit_code::ok;
}

int cmd_lint(const Options& opts, std::ostream& err) {
  const ProjectConfig cfg = resolve_config(opts);
  const Manual manual = compile(cfg, opts, "");
  print_warnings(manual, err);
  return manual.warnings.empty() ? exit_code::ok : exit_code::content_error;
}

std::vector<SourceSymbol> suggestions(const Manual& manual, std::string_view token) {
  std::string wanted = upcase(token);
  if (auto sep = wanted.rfind("::"); sep != std::string::npos) wanted = wanted.substr(sep + 2);
  std::vector<std::pair<std::size_t, SourceSymbol>> near;
  for (const auto& [name, topic] : manual.topics.topics) {
    const std::size_t d = edit_distance(wanted, name.name);
    if (d <= 2) near.emplace_back(d, name);
  }
  std::sort(near.begin(), near.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return encode_key(a.second) < encode_key(b.second);
  });
  std::vector<SourceSymbol> out;
  for (auto& [d, name] : near) out.push_back(std::move(name));
  return out;
}

int cmd_doc(const Options& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  if (opts.topic.empty()) throw UsageError("doc needs a topic name");
  const ProjectConfig cfg = resolve_config(opts);
  std::string extra;
  if (opts.stdin_forms) extra.assign(std::istreambuf_iterator<char>(in), {});
  const Manual manual = compile(cfg, opts, extra);

  const Resolution r = resolve_name(manual.topics, opts.topic, cfg.package);
  if (!r.symbol) {
    if (!parse_symbol_token(opts.topic, cfg.package)) throw UsageError("'" + opts.topic + "' is not a symbol");
    err << "sexdoc: error: no topic named '" << opts.topic << "'";
    if (r.ambiguous()) {
      err << "; it is ambiguous between:";
      for (const SourceSymbol& c : r.candidates) err << " " << c.qualified();
    } else if (const auto near = suggestions(manual, opts.topic); !near.empty()) {
      err << "; did you mean:";
      for (const SourceSymbol& s : near) err << " " << print_symbol(s, cfg.package);
    }
    err << "\n";
    return exit_code::content_error;
  }
  const Topic& topic = *manual.topics.find(*r.symbol);
  const PreparedTopic& prepared = manual.prepared.at(*r.symbol);
  out << render_topic_text(topic, prepared.short_tree, prepared.long_tree);
  return exit_code::ok;
}

int cmd_serve(const Options& opts, std::ostream& err) {
  const ProjectConfig cfg = resolve_config(opts);
  if (opts.build_first) {
    Options rebuild = opts;
    rebuild.force = true;
    const int built = cmd_build(rebuild, err);
    if (built != exit_code::ok) return built;
  }
  ManualServer server(load_manual(cfg.out));
  const int port = server.bind(opts.host, opts.port);
  if (port < 0) {
    err << "sexdoc: error: cannot listen on " << opts.host << ":" << opts.port << "\n";
    return exit_code::content_error;
  }
  err << "sexdoc: serving " << cfg.out.generic_string() << " at http://" << opts.host << ":" << port << "/\n";
  server.listen();
  return exit_code::ok;
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"sexdoc: documentation compiler for S-expression sources", "sexdoc"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--config", opts.config, "Project file (default: $SEXDOC_CONFIG, then ./sexdoc.cfg)");
  app.add_option("--source", opts.sources, "Source file or glob; replaces the config's :sources");
  app.add_option("--package", opts.package, "Default package");
  app.add_option("--out", opts.out, "Output directory");
  app.add_option("-j,--jobs", opts.jobs, "Worker threads (default: all cores)");
  app.add_flag("--force", opts.force, "Overwrite a non-empty output directory");
  app.add_flag("--strict-lint", opts.strict_lint, "Treat broken or ambiguous links as errors");
  app.add_flag("--archive", opts.archive, "Also write download/manual.zip");

  CLI::App* build = app.add_subcommand("build", "Export the manual");
  CLI::App* doc = app.add_subcommand("doc", "Print one topic as text");
  doc->add_option("topic", opts.topic, "Topic name")->required();
  doc->add_flag("--stdin", opts.stdin_forms, "Also read forms from standard input");
  CLI::App* lint = app.add_subcommand("lint", "Print warnings; exit 0 only when there are none");
  CLI::App* serve = app.add_subcommand("serve", "Serve an exported manual over HTTP");
  serve->add_option("--port", opts.port, "Port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", opts.host, "Address to bind");
  serve->add_flag("--build", opts.build_first, "Build the manual first");
  for (CLI::App* sub : {build, doc, lint, serve}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "sexdoc: usage error: " << e.what() << "\n" << app.help();
    return exit_code::usage_error;
  }

  try {
    if (*build) return cmd_build(opts, err);
    if (*doc) return cmd_doc(opts, in, out, err);
    if (*lint) return cmd_lint(opts, err);
    return cmd_serve(opts, err);
  } catch (const UsageError& e) {
    err << "sexdoc: usage error: " << e.what() << "\n";
    return exit_code::usage_error;
  } catch (const Error& e) {
    err << "sexdoc: error: " << e.what() << "\n";
    return exit_code::content_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "sexdoc: error: " << e.what() << "\n";
    return exit_code::content_error;
  }
}

}  // namespace sexdoc
