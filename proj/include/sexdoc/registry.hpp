#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sexdoc/diagnostics.hpp"
#include "sexdoc/events.hpp"

namespace sexdoc {

inline constexpr std::string_view missing_parents_name = "MISSING-PARENTS";
/// Origin reported by topics that finalize creates.
inline constexpr std::string_view generated_origin = "(generated)";

struct Topic {
  SourceSymbol name;
  std::vector<SourceSymbol> parents;
  std::string short_text;
  std::string long_text;
  std::string origin;
  int line = 0;
  std::uint64_t order = 0;
};

/// Symbols grouped by bare name, for package-free lookups.
class NameIndex {
 public:
  void add(const SourceSymbol& symbol);
  bool contains(const SourceSymbol& symbol) const { return all_.count(symbol) != 0; }
  std::vector<SourceSymbol> with_name(std::string_view name) const;
  const std::set<SourceSymbol>& all() const { return all_; }

 private:
  std::map<std::string, std::vector<SourceSymbol>, std::less<>> by_name_;
  std::set<SourceSymbol> all_;
};

struct Resolution {
  std::optional<SourceSymbol> symbol;
  /// Every topic sharing the bare name when the lookup was ambiguous.
  std::vector<SourceSymbol> candidates;

  bool ambiguous() const { return !symbol && candidates.size() > 1; }
};

/// Explicit `PKG::NAME` is looked up exactly. A bare name tries the current
/// package, then a unique topic of that name in any package; several matches
/// leave the result empty and list the candidates.
Resolution resolve_name(const NameIndex& index, std::string_view token,
                        std::string_view current_package);

/// The ordered topic table, before hierarchy validation.
class Registry {
 public:
  /// Adds or replaces a topic. Replacement keeps the original order number
  /// and records a W-REDEF warning.
  void define_topic(const TopicDecl& decl, const SourceSpan& where);

  /// Default parents for topics without :parents, from here to the end of `file`.
  void set_default_parents(const std::string& file, std::vector<SourceSymbol> parents);

  const std::vector<Topic>& topics() const { return topics_; }
  const Topic* find(const SourceSymbol& name) const;
  const std::vector<Diagnostic>& warnings() const { return warnings_; }
  const NameIndex& names() const { return names_; }

 private:
  std::vector<Topic> topics_;
  std::map<SourceSymbol, std::size_t> index_;
  std::map<std::string, std::vector<SourceSymbol>> default_parents_;
  std::vector<Diagnostic> warnings_;
  NameIndex names_;
  std::uint64_t next_order_ = 1;
};

/// Applies DefineTopic and SetDefaultParents events in order. Other event
/// kinds are skipped; macro events must be elaborated first (see doc_macros).
Registry apply_events(const std::vector<DocEvent>& events);

Resolution resolve_name(const Registry& registry, std::string_view token,
                        std::string_view current_package);

/// A validated, acyclic hierarchy ready for rendering.
struct TopicSet {
  SourceSymbol root;
  std::map<SourceSymbol, Topic> topics;
  /// Every topic has an entry; lists are ranked by importance then key.
  std::map<SourceSymbol, std::vector<SourceSymbol>> children;
  /// Topics without parents, the root first.
  std::vector<SourceSymbol> roots;
  std::vector<Diagnostic> warnings;
  NameIndex names;

  const Topic* find(const SourceSymbol& name) const;
  /// Topics by ascending order number.
  std::vector<const Topic*> ordered() const;
  /// Re-sorts child lists by (importance descending, key ascending).
  void rank_children(const std::map<SourceSymbol, std::uint64_t>& importance);
};

/// Builds the children map and repairs the graph: a missing root is created,
/// dangling parents are replaced by MISSING-PARENTS (a child of the root),
/// cycles lose their back edge with the highest order number.
TopicSet finalize(const Registry& registry, const SourceSymbol& root);

Resolution resolve_name(const TopicSet& topics, std::string_view token,
                        std::string_view current_package);

}  // namespace sexdoc
