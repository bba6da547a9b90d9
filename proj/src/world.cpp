#include "sexdoc/world.hpp"

#include <fstream>
#include <sstream>

#include "parallel.hpp"

namespace sexdoc {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read source file '" + path.generic_string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void add_definition(World& world, const Definition& def) {
  auto [it, inserted] = world.definitions.emplace(def.name, def);
  if (!inserted) {
    throw Error(def.form.span, "duplicate definition of " + def.name.qualified() +
                                   " (first defined at " + it->second.form.span.describe() + ")");
  }
}

void collect_definitions(World& world, const std::vector<DocEvent>& events) {
  for (const DocEvent& event : events) {
    if (event.local) continue;
    if (const auto* raw = event.get<RawDefinitionEvent>()) {
      add_definition(world, raw->definition);
    } else if (const auto* define = event.get<DefineDeclEvent>()) {
      add_definition(world, define->decl.definition);
      collect_definitions(world, define->decl.related);
    }
  }
}

}  // namespace

World build_world_from_sources(const std::vector<SourceText>& sources,
                               std::string_view default_package, unsigned jobs) {
  std::vector<std::vector<DocEvent>> per_file(sources.size());
  detail::parallel_for(sources.size(), jobs, [&](std::size_t i) {
    const SourceText& source = sources[i];
    per_file[i] = scan_events(read_forms(source.text, default_package, source.origin), source.origin);
  });
  World world;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    world.files.push_back(sources[i].origin);
    for (DocEvent& event : per_file[i]) world.events.push_back(std::move(event));
  }
  collect_definitions(world, world.events);
  return world;
}

World build_world(const std::vector<std::filesystem::path>& files, std::string_view default_package,
                  unsigned jobs) {
  std::vector<SourceText> sources(files.size());
  detail::parallel_for(files.size(), jobs, [&](std::size_t i) {
    sources[i] = SourceText{files[i].generic_string(), read_file(files[i])};
  });
  return build_world_from_sources(sources, default_package, jobs);
}

const Definition* lookup_definition(const World& world, const SourceSymbol& name) {
  auto it = world.definitions.find(name);
  return it == world.definitions.end() ? nullptr : &it->second;
}

const Definition* resolve_definition(const World& world, std::string_view token,
                                     std::string_view current_package) {
  std::optional<SourceSymbol> symbol = parse_symbol_token(token, current_package);
  if (!symbol || symbol->is_keyword()) return nullptr;
  if (const Definition* exact = lookup_definition(world, *symbol)) return exact;
  if (token.find("::") != std::string_view::npos) return nullptr;
  const Definition* found = nullptr;
  for (const auto& [name, def] : world.definitions) {
    if (name.name != symbol->name) continue;
    if (found != nullptr) return nullptr;
    found = &def;
  }
  return found;
}

}  // namespace sexdoc
