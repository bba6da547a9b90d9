#include "sexdoc/registry.hpp"

#include <algorithm>
#include <deque>

#include "sexdoc/topic_key.hpp"

namespace sexdoc {

void NameIndex::add(const SourceSymbol& symbol) {
  if (!all_.insert(symbol).second) return;
  auto& bucket = by_name_[symbol.name];
  bucket.insert(std::upper_bound(bucket.begin(), bucket.end(), symbol), symbol);
}

std::vector<SourceSymbol> NameIndex::with_name(std::string_view name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? std::vector<SourceSymbol>{} : it->second;
}

Resolution resolve_name(const NameIndex& index, std::string_view token,
                        std::string_view current_package) {
  Resolution result;
  std::optional<SourceSymbol> symbol = parse_symbol_token(token, current_package);
  if (!symbol || symbol->is_keyword()) return result;
  if (token.find("::") != std::string_view::npos) {
    if (index.contains(*symbol)) result.symbol = symbol;
    return result;
  }
  if (index.contains(*symbol)) {
    result.symbol = symbol;
    return result;
  }
  std::vector<SourceSymbol> candidates = index.with_name(symbol->name);
  if (candidates.size() == 1) {
    result.symbol = candidates.front();
  } else {
    result.candidates = std::move(candidates);
  }
  return result;
}

void Registry::define_topic(const TopicDecl& decl, const SourceSpan& where) {
  std::vector<SourceSymbol> parents;
  if (decl.parents) {
    parents = *decl.parents;
  } else if (auto it = default_parents_.find(where.file); it != default_parents_.end()) {
    parents = it->second;
  }
  std::vector<SourceSymbol> unique;
  for (SourceSymbol& p : parents) {
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(std::move(p));
  }

  if (auto it = index_.find(decl.name); it != index_.end()) {
    Topic& existing = topics_[it->second];
    warnings_.push_back(Diagnostic{warning_code::redefinition, where.file, where.line,
                                   "topic " + decl.name.qualified() + " redefined (previously at " +
                                       existing.origin + ":" + std::to_string(existing.line) + ")",
                                   decl.name});
    existing.parents = std::move(unique);
    existing.short_text = decl.short_text;
    existing.long_text = decl.long_text;
    existing.origin = where.file;
    existing.line = where.line;
    return;
  }
  index_.emplace(decl.name, topics_.size());
  names_.add(decl.name);
  topics_.push_back(Topic{decl.name, std::move(unique), decl.short_text, decl.long_text, where.file,
                          where.line, next_order_++});
}

void Registry::set_default_parents(const std::string& file, std::vector<SourceSymbol> parents) {
  default_parents_[file] = std::move(parents);
}

const Topic* Registry::find(const SourceSymbol& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &topics_[it->second];
}

Registry apply_events(const std::vector<DocEvent>& events) {
  Registry registry;
  for (const DocEvent& event : events) {
    if (const auto* topic = event.get<DefineTopicEvent>()) {
      registry.define_topic(topic->topic, event.span);
    } else if (const auto* defaults = event.get<SetDefaultParentsEvent>()) {
      registry.set_default_parents(event.span.file, defaults->parents);
    }
  }
  return registry;
}

Resolution resolve_name(const Registry& registry, std::string_view token,
                        std::string_view current_package) {
  return resolve_name(registry.names(), token, current_package);
}

const Topic* TopicSet::find(const SourceSymbol& name) const {
  auto it = topics.find(name);
  return it == topics.end() ? nullptr : &it->second;
}

std::vector<const Topic*> TopicSet::ordered() const {
  std::vector<const Topic*> out;
  out.reserve(topics.size());
  for (const auto& [name, topic] : topics) out.push_back(&topic);
  std::sort(out.begin(), out.end(), [](const Topic* a, const Topic* b) { return a->order < b->order; });
  return out;
}

void TopicSet::rank_children(const std::map<SourceSymbol, std::uint64_t>& importance) {
  std::map<SourceSymbol, std::string> keys;
  for (const auto& [name, topic] : topics) keys.emplace(name, encode_key(name));
  auto score = [&](const SourceSymbol& s) -> std::uint64_t {
    auto it = importance.find(s);
    return it == importance.end() ? 0 : it->second;
  };
  for (auto& [parent, kids] : children) {
    std::sort(kids.begin(), kids.end(), [&](const SourceSymbol& a, const SourceSymbol& b) {
      const std::uint64_t sa = score(a);
      const std::uint64_t sb = score(b);
      if (sa != sb) return sa > sb;
      return keys.at(a) < keys.at(b);
    });
  }
}

Resolution resolve_name(const TopicSet& topics, std::string_view token,
                        std::string_view current_package) {
  return resolve_name(topics.names, token, current_package);
}

namespace {

struct Edge {
  SourceSymbol child;
  SourceSymbol parent;
};

/// First cycle found by a depth-first walk in topic order, as child->parent edges.
std::optional<std::vector<Edge>> find_cycle(const TopicSet& ts) {
  enum class Mark { white, grey, black };
  std::map<SourceSymbol, Mark> mark;
  for (const auto& [name, topic] : ts.topics) mark[name] = Mark::white;

  for (const Topic* start : ts.ordered()) {
    if (mark[start->name] != Mark::white) continue;
    struct Frame {
      SourceSymbol node;
      std::size_t next = 0;
    };
    std::vector<Frame> stack{{start->name}};
    mark[start->name] = Mark::grey;
    while (!stack.empty()) {
      Frame& frame = stack.back();
      const std::vector<SourceSymbol>& parents = ts.topics.at(frame.node).parents;
      if (frame.next == parents.size()) {
        mark[frame.node] = Mark::black;
        stack.pop_back();
        continue;
      }
      const SourceSymbol parent = parents[frame.next++];
      if (mark[parent] == Mark::grey) {
        std::vector<Edge> cycle;
        std::size_t i = stack.size();
        while (i-- > 0) {
          const SourceSymbol& node = stack[i].node;
          const SourceSymbol& to = (i + 1 < stack.size()) ? stack[i + 1].node : parent;
          cycle.push_back(Edge{node, to});
          if (node == parent) break;
        }
        return cycle;
      }
      if (mark[parent] == Mark::white) {
        mark[parent] = Mark::grey;
        stack.push_back(Frame{parent});
      }
    }
  }
  return std::nullopt;
}

Diagnostic warn(const Topic& topic, const char* code, std::string message) {
  return Diagnostic{code, topic.origin, topic.line, std::move(message), topic.name};
}

}  // namespace

TopicSet finalize(const Registry& registry, const SourceSymbol& root) {
  TopicSet ts;
  ts.root = root;
  std::uint64_t next_order = 1;
  for (const Topic& topic : registry.topics()) {
    ts.topics.emplace(topic.name, topic);
    next_order = std::max(next_order, topic.order + 1);
  }

  if (ts.topics.count(root) == 0) {
    ts.topics.emplace(root, Topic{root, {}, "", "", std::string(generated_origin), 0, next_order++});
  }
  Topic& root_topic = ts.topics.at(root);
  if (!root_topic.parents.empty()) {
    ts.warnings.push_back(warn(root_topic, warning_code::root_parents,
                               "root topic " + root.qualified() + " may not have parents; they were dropped"));
    root_topic.parents.clear();
  }

  const SourceSymbol missing{root.package, std::string(missing_parents_name)};
  auto missing_bin = [&]() -> const SourceSymbol& {
    auto [it, created] = ts.topics.try_emplace(missing);
    if (created) {
      it->second = Topic{missing, {root}, "Topics whose parents do not exist.", "",
                         std::string(generated_origin), 0, next_order++};
    } else {
      it->second.parents = {root};
    }
    return missing;
  };

  const std::set<SourceSymbol> defined = [&] {
    std::set<SourceSymbol> names;
    for (const auto& [name, topic] : ts.topics) names.insert(name);
    return names;
  }();

  for (const Topic* ordered : ts.ordered()) {
    Topic& topic = ts.topics.at(ordered->name);
    if (topic.name == root) continue;
    std::vector<SourceSymbol> repaired;
    bool dropped_self = false;
    bool dangling = false;
    for (const SourceSymbol& parent : topic.parents) {
      if (parent == topic.name) {
        dropped_self = true;
        ts.warnings.push_back(warn(topic, warning_code::cycle,
                                   "topic " + topic.name.qualified() + " lists itself as a parent; edge dropped"));
      } else if (parent == missing) {
        repaired.push_back(missing_bin());
      } else if (defined.count(parent) == 0) {
        dangling = true;
        ts.warnings.push_back(warn(topic, warning_code::orphan,
                                   "parent " + parent.qualified() + " of " + topic.name.qualified() +
                                       " does not exist; filed under " + missing.qualified()));
      } else {
        repaired.push_back(parent);
      }
    }
    if (dangling || (dropped_self && repaired.empty())) {
      const SourceSymbol& bin = missing_bin();
      if (std::find(repaired.begin(), repaired.end(), bin) == repaired.end()) repaired.push_back(bin);
    }
    ts.topics.at(ordered->name).parents = std::move(repaired);
  }

  while (std::optional<std::vector<Edge>> cycle = find_cycle(ts)) {
    const Edge* victim = &cycle->front();
    for (const Edge& e : *cycle) {
      if (ts.topics.at(e.child).order > ts.topics.at(victim->child).order) victim = &e;
    }
    Topic& child = ts.topics.at(victim->child);
    std::erase(child.parents, victim->parent);
    ts.warnings.push_back(warn(child, warning_code::cycle,
                               "parent edge " + child.name.qualified() + " -> " + victim->parent.qualified() +
                                   " closes a cycle; edge dropped"));
    if (child.parents.empty()) {
      const SourceSymbol& bin = missing_bin();
      ts.topics.at(victim->child).parents.push_back(bin);
    }
  }

  for (const auto& [name, topic] : ts.topics) {
    ts.names.add(name);
    ts.children.try_emplace(name);
  }
  for (const Topic* topic : ts.ordered()) {
    for (const SourceSymbol& parent : topic->parents) ts.children[parent].push_back(topic->name);
    if (topic->parents.empty() && topic->name != root) ts.roots.push_back(topic->name);
  }
  std::sort(ts.roots.begin(), ts.roots.end(),
            [](const SourceSymbol& a, const SourceSymbol& b) { return encode_key(a) < encode_key(b); });
  ts.roots.insert(ts.roots.begin(), root);
  ts.rank_children({});

  std::set<SourceSymbol> reached{root};
  std::deque<SourceSymbol> queue{root};
  while (!queue.empty()) {
    const SourceSymbol node = queue.front();
    queue.pop_front();
    for (const SourceSymbol& kid : ts.children.at(node)) {
      if (reached.insert(kid).second) queue.push_back(kid);
    }
  }
  for (const Topic* topic : ts.ordered()) {
    if (reached.count(topic->name) != 0 || topic->parents.empty()) continue;
    SourceSymbol top = topic->name;
    while (!ts.topics.at(top).parents.empty()) top = ts.topics.at(top).parents.front();
    ts.warnings.push_back(warn(*topic, warning_code::unreachable,
                               "topic " + topic->name.qualified() + " is not reachable from " +
                                   root.qualified() + "; its hierarchy starts at " + top.qualified()));
  }
  return ts;
}

}  // namespace sexdoc
