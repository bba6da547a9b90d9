#include "sexdoc/pipeline.hpp"

#include "parallel.hpp"
#include "sexdoc/doc_macros.hpp"
#include "sexdoc/export.hpp"
#include "sexdoc/preprocess.hpp"
#include "sexdoc/topic_key.hpp"

namespace sexdoc {

void collect_links(const std::vector<MarkupNode>& nodes, std::set<SourceSymbol>& out) {
  for (const MarkupNode& node : nodes) {
    const MarkupElement* e = node.element();
    if (!e) continue;
    if (e->tag == "see") {
      if (auto target = try_decode_key(*e->attribute("topic"))) out.insert(*target);
    }
    collect_links(e->children, out);
  }
}

Manual compile_manual(const World& world, const PipelineOptions& options) {
  const Registry registry = apply_events(elaborate_events(world.events));
  const SourceSymbol root = options.root.value_or(make_symbol(options.package, "TOP"));

  Manual manual;
  manual.topics = finalize(registry, root);
  manual.warnings = registry.warnings();
  manual.warnings.insert(manual.warnings.end(), manual.topics.warnings.begin(), manual.topics.warnings.end());

  const std::vector<const Topic*> order = manual.topics.ordered();
  std::vector<PreparedTopic> prepared(order.size());
  std::vector<std::vector<Diagnostic>> diagnostics(order.size());
  detail::parallel_for(order.size(), options.jobs, [&](std::size_t i) {
    const Topic& topic = *order[i];
    PreprocessContext ctx;
    ctx.world = &world;
    ctx.topics = &manual.topics;
    ctx.package = topic.name.package;
    ctx.topic = topic.name;
    ctx.where = SourceSpan{topic.origin, topic.line, 0};
    ctx.diagnostics = &diagnostics[i];

    PreparedTopic& p = prepared[i];
    p.name = topic.name;
    p.key = encode_key(topic.name);
    p.short_tree = parse_checked_markup(preprocess(topic.short_text, ctx), ctx, ":short");
    p.long_tree = parse_checked_markup(preprocess(topic.long_text, ctx), ctx, ":long");
    p.short_html = serialize(p.short_tree);
    p.long_html = serialize(p.long_tree);
    collect_links(p.short_tree.children, p.links);
    collect_links(p.long_tree.children, p.links);
    p.links.erase(topic.name);
  });

  for (std::size_t i = 0; i < order.size(); ++i) {
    manual.warnings.insert(manual.warnings.end(), diagnostics[i].begin(), diagnostics[i].end());
    manual.prepared.emplace(order[i]->name, std::move(prepared[i]));
  }
  manual.importance = importance_scores(manual.topics, manual.prepared);
  manual.topics.rank_children(manual.importance);
  return manual;
}

}  // namespace sexdoc
