#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sexdoc/markup.hpp"
#include "sexdoc/registry.hpp"
#include "sexdoc/world.hpp"

namespace sexdoc {

/// A topic after preprocessing: parsed trees plus their canonical markup.
struct PreparedTopic {
  SourceSymbol name;
  std::string key;
  MarkupTree short_tree;
  MarkupTree long_tree;
  std::string short_html;
  std::string long_html;
  /// Topics this one links to with <see>, excluding itself.
  std::set<SourceSymbol> links;
};

/// Everything renderers and the exporter need.
struct Manual {
  TopicSet topics;
  std::map<SourceSymbol, PreparedTopic> prepared;
  std::map<SourceSymbol, std::uint64_t> importance;
  /// Registry, hierarchy and preprocessing warnings, in that order.
  std::vector<Diagnostic> warnings;
};

struct PipelineOptions {
  std::string package = "ACL2";
  /// Defaults to TOP in `package`.
  std::optional<SourceSymbol> root;
  unsigned jobs = 1;
};

/// elaborate -> registry -> finalize -> preprocess -> rank. Topics are
/// preprocessed on up to `jobs` threads; the result does not depend on it.
Manual compile_manual(const World& world, const PipelineOptions& options);

/// Targets of every <see> element in `nodes`.
void collect_links(const std::vector<MarkupNode>& nodes, std::set<SourceSymbol>& out);

}  // namespace sexdoc
