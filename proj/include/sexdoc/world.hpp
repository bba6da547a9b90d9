#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sexdoc/events.hpp"

namespace sexdoc {

/// Catalogue of every parsed source file: definitions by name plus the
/// ordered documentation event stream. Immutable once built.
struct World {
  std::map<SourceSymbol, Definition> definitions;
  std::vector<DocEvent> events;
  std::vector<std::string> files;
};

/// In-memory source text; `origin` is the label topics report.
struct SourceText {
  std::string origin;
  std::string text;
};

/// Reads and scans `files` (in the given order) and assembles the world.
/// Files are parsed on up to `jobs` threads; the result does not depend on it.
World build_world(const std::vector<std::filesystem::path>& files, std::string_view default_package,
                  unsigned jobs = 1);

World build_world_from_sources(const std::vector<SourceText>& sources,
                               std::string_view default_package, unsigned jobs = 1);

/// Exact-name lookup; null when absent (including names defined only locally).
const Definition* lookup_definition(const World& world, const SourceSymbol& name);

/// Looks a printed token up the way @(def) does: explicit package exactly,
/// otherwise the current package first and then a unique match in any package.
const Definition* resolve_definition(const World& world, std::string_view token,
                                     std::string_view current_package);

}  // namespace sexdoc
