#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sexdoc/symbol.hpp"

namespace sexdoc {

/// Contents of a sexdoc.cfg file:
///
///   (:sources ("src/*.lisp" "doc.lisp")
///    :package "ACL2"
///    :root top
///    :title "My Manual"
///    :out "manual")
///
/// Relative paths are taken from the directory holding the file.
struct ProjectConfig {
  std::filesystem::path base_dir = ".";
  std::vector<std::string> sources;
  std::string package = "ACL2";
  /// TOP in `package` when not given.
  std::optional<SourceSymbol> root;
  std::string title = "Manual";
  std::filesystem::path out = "manual";
  bool force = false;
  bool strict_lint = false;
  bool archive = false;

  SourceSymbol root_symbol() const;
};

ProjectConfig parse_config(std::string_view text, const std::filesystem::path& base_dir,
                           std::string_view file = "sexdoc.cfg");
ProjectConfig load_config(const std::filesystem::path& file);

/// Shell-style match of a '/'-separated path: `*` and `?` stay within one
/// segment, a `**` segment matches any number of segments.
bool glob_match(std::string_view pattern, std::string_view path);

/// Expands each pattern against `base_dir`, in pattern order. Matches of a
/// single pattern are sorted; a file matched twice is kept once. A literal
/// path that does not exist, or a pattern matching nothing, is an error.
std::vector<std::filesystem::path> expand_sources(const std::vector<std::string>& patterns,
                                                  const std::filesystem::path& base_dir);

}  // namespace sexdoc
