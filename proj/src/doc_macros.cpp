#include "sexdoc/doc_macros.hpp"

#include "doc_templates.hpp"
#include "sexdoc/markup.hpp"

namespace sexdoc {

namespace {

std::string printed(const SourceSymbol& symbol, const std::string& package) {
  return print_symbol(symbol, package);
}

std::string type_markup(const std::optional<Form>& type, const std::string& package) {
  if (!type) return "";
  if (const SourceSymbol* sym = type->symbol()) {
    if (!sym->is_keyword()) return "@(tsee " + printed(*sym, package) + ")";
  }
  return "@('" + print_form(*type, package, LetterCase::lower) + "')";
}

template <class Entry>
templates::EntryText entry_text(const Entry& e, const std::string& package) {
  return {escape_text(printed(e.name, package)), type_markup(e.type, package), e.doc};
}

DocEvent topic_event(TopicDecl topic, const SourceSpan& where, bool local) {
  return DocEvent{DefineTopicEvent{std::move(topic)}, where, local};
}

SourceSymbol with_name(const SourceSymbol& like, std::string name) {
  return SourceSymbol{like.package, std::move(name)};
}

std::string joined(std::string a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "\n\n" + b;
}

}  // namespace

std::vector<SourceSymbol> collected_names(const std::vector<DocEvent>& body) {
  std::vector<SourceSymbol> names;
  int depth = 0;
  for (const DocEvent& e : body) {
    if (e.get<SectionBeginEvent>()) ++depth;
    else if (e.get<SectionEndEvent>()) --depth;
    if (depth > 0 || e.local) continue;
    if (const auto* raw = e.get<RawDefinitionEvent>()) names.push_back(raw->definition.name);
    if (const auto* def = e.get<DefineDeclEvent>()) names.push_back(def->decl.definition.name);
  }
  return names;
}

std::string definitions_listing(const std::vector<SourceSymbol>& names, const std::string& package) {
  if (names.empty()) return "";
  std::string out = templates::definitions_heading();
  for (const SourceSymbol& name : names) out += templates::def_line(printed(name, package));
  return out;
}

std::vector<DocEvent> elaborate_section(const SectionDecl& d, const SourceSpan& where) {
  TopicDecl topic = d.topic;
  const std::string listing = definitions_listing(collected_names(d.body), topic.name.package);
  if (!listing.empty()) topic.long_text += "\n\n" + listing;
  return {topic_event(std::move(topic), where, false)};
}

std::vector<DocEvent> elaborate_define(const DefineDecl& d, const SourceSpan& where) {
  const std::string& package = d.topic.name.package;
  std::vector<templates::EntryText> formals;
  std::vector<templates::EntryText> returns;
  for (const FormalDecl& f : d.formals) formals.push_back(entry_text(f, package));
  for (const ReturnDecl& r : d.returns) returns.push_back(entry_text(r, package));

  std::vector<SourceSymbol> names{d.definition.name};
  for (const SourceSymbol& name : collected_names(d.related)) names.push_back(name);

  TopicDecl topic = d.topic;
  topic.long_text = joined(joined(templates::signature_block(formals, returns), d.topic.long_text),
                           definitions_listing(names, package));

  std::vector<DocEvent> out{topic_event(std::move(topic), where, false)};
  out.push_back(DocEvent{RawDefinitionEvent{d.definition}, where, false});
  int depth = 0;
  for (const DocEvent& e : d.related) {
    if (e.get<SectionBeginEvent>()) ++depth;
    else if (e.get<SectionEndEvent>()) --depth;
    if (depth == 0 && !e.local && e.get<RawDefinitionEvent>()) out.push_back(e);
  }
  return out;
}

std::vector<DocEvent> elaborate_aggregate(const AggregateDecl& d, const SourceSpan& where) {
  const SourceSymbol& base = d.topic.name;
  const std::string& package = base.package;
  const SourceSymbol recognizer = with_name(base, base.name + "-P");
  const SourceSymbol constructor = with_name(base, "MAKE-" + base.name);
  const std::string recognizer_text = printed(recognizer, package);

  std::vector<templates::EntryText> fields;
  for (const FieldDecl& f : d.fields) fields.push_back(entry_text(f, package));

  std::vector<DocEvent> out;
  TopicDecl main{recognizer, d.topic.parents, d.topic.short_text,
                 joined(templates::aggregate_intro(escape_text(printed(base, package)), fields), d.topic.long_text)};
  out.push_back(topic_event(std::move(main), where, false));

  TopicDecl make{constructor, std::vector<SourceSymbol>{recognizer}, templates::constructor_short(recognizer_text),
                 templates::constructor_long(printed(constructor, package), fields)};
  out.push_back(topic_event(std::move(make), where, false));

  for (std::size_t i = 0; i < d.fields.size(); ++i) {
    const SourceSymbol accessor = with_name(base, base.name + "->" + d.fields[i].name.name);
    TopicDecl access{accessor, std::vector<SourceSymbol>{recognizer},
                     templates::accessor_short(fields[i].name, fields[i].doc),
                     templates::accessor_long(printed(accessor, package), recognizer_text, fields[i])};
    out.push_back(topic_event(std::move(access), where, false));
  }
  return out;
}

std::vector<DocEvent> elaborate_events(const std::vector<DocEvent>& events) {
  std::vector<DocEvent> out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const DocEvent& e = events[i];
    if (const auto* begin = e.get<SectionBeginEvent>()) {
      SectionDecl section{begin->section, {}};
      int depth = 1;
      for (std::size_t j = i + 1; j < events.size(); ++j) {
        if (events[j].get<SectionBeginEvent>()) ++depth;
        if (events[j].get<SectionEndEvent>() && --depth == 0) break;
        section.body.push_back(events[j]);
      }
      for (DocEvent& produced : elaborate_section(section, e.span)) {
        produced.local = e.local;
        out.push_back(std::move(produced));
      }
    } else if (const auto* define = e.get<DefineDeclEvent>()) {
      for (DocEvent& produced : elaborate_define(define->decl, e.span)) {
        produced.local = produced.local || e.local;
        out.push_back(std::move(produced));
      }
    } else if (const auto* aggregate = e.get<AggregateDeclEvent>()) {
      for (DocEvent& produced : elaborate_aggregate(aggregate->decl, e.span)) {
        produced.local = e.local;
        out.push_back(std::move(produced));
      }
    } else if (!e.get<SectionEndEvent>()) {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace sexdoc
