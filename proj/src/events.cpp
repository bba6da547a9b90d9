#include "sexdoc/events.hpp"

#include <set>

namespace sexdoc {

std::string_view kind_label(DefinitionKind kind) {
  switch (kind) {
    case DefinitionKind::function: return "Function";
    case DefinitionKind::macro: return "Macro";
    case DefinitionKind::theorem: return "Theorem";
    case DefinitionKind::constant: return "Constant";
    case DefinitionKind::other: break;
  }
  return "Definition";
}

DefinitionKind kind_for_operator(std::string_view head) {
  if (head == "DEFUN" || head == "DEFINE") return DefinitionKind::function;
  if (head == "DEFMACRO") return DefinitionKind::macro;
  if (head == "DEFTHM" || head == "DEFCONG") return DefinitionKind::theorem;
  if (head == "DEFCONST") return DefinitionKind::constant;
  return DefinitionKind::other;
}

std::optional<SourceSymbol> defcong_name(const Form& form) {
  const FormList* items = form.list();
  if (items == nullptr || items->size() < 5) return std::nullopt;
  const SourceSymbol* equiv1 = (*items)[1].symbol();
  const SourceSymbol* equiv2 = (*items)[2].symbol();
  const std::int64_t* position = (*items)[4].integer();
  const std::optional<std::string_view> fn_name = (*items)[3].head_name();
  if (equiv1 == nullptr || equiv2 == nullptr || position == nullptr || !fn_name) {
    return std::nullopt;
  }
  const SourceSymbol& fn = *(*(*items)[3].list()).front().symbol();
  return SourceSymbol{fn.package, equiv1->name + "-IMPLIES-" + equiv2->name + "-" +
                                      std::string(*fn_name) + "-" + std::to_string(*position)};
}

namespace {

bool is_named_symbol(const Form& form) { return form.is_symbol() && !form.is_keyword(); }

bool is_separator(const Form& form) { return form.is_symbol() && form.symbol()->name == "///"; }

std::vector<SourceSymbol> parse_parents(const Form& value, std::string_view what) {
  if (value.is_symbol() && !value.is_keyword() && value.symbol()->name == "NIL") return {};
  const FormList* items = value.list();
  if (items == nullptr) {
    throw Error(value.span, std::string(what) + ": :parents must be a list of symbols");
  }
  std::vector<SourceSymbol> parents;
  for (const Form& item : *items) {
    if (!is_named_symbol(item)) {
      throw Error(item.span, std::string(what) + ": :parents must be a list of symbols");
    }
    parents.push_back(*item.symbol());
  }
  return parents;
}

std::string parse_doc_string(const Form& value, std::string_view option, std::string_view what) {
  if (!value.is_string()) {
    throw Error(value.span, std::string(what) + ": " + std::string(option) + " must be a string");
  }
  return *value.string();
}

/// Applies a :parents/:short/:long option to `topic`; other options are ignored.
void apply_topic_option(TopicDecl& topic, const SourceSymbol& key, const Form& value,
                        std::string_view what) {
  if (key.name == "PARENTS") {
    topic.parents = parse_parents(value, what);
  } else if (key.name == "SHORT") {
    topic.short_text = parse_doc_string(value, ":short", what);
  } else if (key.name == "LONG") {
    topic.long_text = parse_doc_string(value, ":long", what);
  }
}

SourceSymbol require_name(const Form& form, std::string_view what) {
  const FormList& items = *form.list();
  if (items.size() < 2 || !is_named_symbol(items[1])) {
    throw Error(form.span, std::string(what) + " is missing a name");
  }
  return *items[1].symbol();
}

class Scanner {
 public:
  explicit Scanner(std::string_view file) : file_(file) {}

  void scan(const Form& form, bool local, std::vector<DocEvent>& out) {
    const std::optional<std::string_view> head = form.head_name();
    if (!head) return;
    if (*head == "LOCAL") {
      const FormList& items = *form.list();
      if (items.size() == 2) scan(items[1], true, out);
      return;
    }
    if (*head == "DEFXDOC") {
      out.push_back(DocEvent{DefineTopicEvent{parse_defxdoc(form)}, form.span, local});
    } else if (*head == "SET-DEFAULT-PARENTS") {
      out.push_back(DocEvent{SetDefaultParentsEvent{parse_default_parents(form)}, form.span, local});
    } else if (*head == "DEFSECTION") {
      scan_section(form, local, out);
    } else if (*head == "DEFINE") {
      out.push_back(DocEvent{DefineDeclEvent{parse_define_form(form, file_)}, form.span, local});
    } else if (*head == "DEFAGGREGATE") {
      out.push_back(DocEvent{AggregateDeclEvent{parse_aggregate_form(form)}, form.span, local});
    } else if (*head == "DEFUN" || *head == "DEFMACRO" || *head == "DEFTHM" ||
               *head == "DEFCONST") {
      Definition def{require_name(form, *head), kind_for_operator(*head), form, std::string(file_)};
      out.push_back(DocEvent{RawDefinitionEvent{std::move(def)}, form.span, local});
    } else if (*head == "DEFCONG") {
      std::optional<SourceSymbol> name = defcong_name(form);
      if (!name) throw Error(form.span, "malformed defcong: expected (defcong equiv1 equiv2 (fn ...) k)");
      Definition def{std::move(*name), DefinitionKind::theorem, form, std::string(file_)};
      out.push_back(DocEvent{RawDefinitionEvent{std::move(def)}, form.span, local});
    }
  }

 private:
  TopicDecl parse_defxdoc(const Form& form) {
    const FormList& items = *form.list();
    TopicDecl topic;
    topic.name = require_name(form, "defxdoc");
    if ((items.size() - 2) % 2 != 0) {
      throw Error(form.span, "defxdoc: options must be keyword/value pairs");
    }
    for (std::size_t i = 2; i + 1 < items.size(); i += 2) {
      if (!items[i].is_keyword()) throw Error(items[i].span, "defxdoc: expected a keyword option");
      apply_topic_option(topic, *items[i].symbol(), items[i + 1], "defxdoc");
    }
    return topic;
  }

  std::vector<SourceSymbol> parse_default_parents(const Form& form) {
    const FormList& items = *form.list();
    if (items.size() == 2 && items[1].is_list()) return parse_parents(items[1], "set-default-parents");
    std::vector<SourceSymbol> parents;
    for (std::size_t i = 1; i < items.size(); ++i) {
      if (!is_named_symbol(items[i])) {
        throw Error(items[i].span, "set-default-parents: expected topic names");
      }
      parents.push_back(*items[i].symbol());
    }
    return parents;
  }

  void scan_section(const Form& form, bool local, std::vector<DocEvent>& out) {
    const FormList& items = *form.list();
    TopicDecl topic;
    topic.name = require_name(form, "defsection");
    std::vector<const Form*> body;
    for (std::size_t i = 2; i < items.size(); ++i) {
      if (items[i].is_keyword()) {
        if (i + 1 >= items.size()) throw Error(items[i].span, "defsection: option is missing its value");
        apply_topic_option(topic, *items[i].symbol(), items[i + 1], "defsection");
        ++i;
      } else {
        body.push_back(&items[i]);
      }
    }
    const SourceSymbol name = topic.name;
    out.push_back(DocEvent{SectionBeginEvent{std::move(topic)}, form.span, local});
    for (const Form* f : body) scan(*f, local, out);
    out.push_back(DocEvent{SectionEndEvent{name}, form.span, local});
  }

  std::string_view file_;
};

struct EntryParts {
  std::optional<Form> type;
  std::string doc;
  std::vector<Form> options;
};

/// Splits the tail of a `(name [type] ["doc"] [:key value]...)` entry.
EntryParts parse_entry_tail(const FormList& items, std::string_view what) {
  EntryParts parts;
  for (std::size_t i = 1; i < items.size(); ++i) {
    const Form& item = items[i];
    if (item.is_keyword()) {
      parts.options.push_back(item);
      if (i + 1 < items.size()) parts.options.push_back(items[++i]);
    } else if (item.is_string() && parts.doc.empty()) {
      parts.doc = *item.string();
    } else if (!item.is_string() && !parts.type) {
      parts.type = item;
    } else {
      throw Error(item.span, std::string(what) + ": unexpected element in entry");
    }
  }
  return parts;
}

FormalDecl parse_formal(const Form& entry) {
  if (is_named_symbol(entry)) return FormalDecl{*entry.symbol(), std::nullopt, ""};
  const FormList* items = entry.list();
  if (items == nullptr || items->empty() || !is_named_symbol(items->front())) {
    throw Error(entry.span, "define: formal is missing a name");
  }
  EntryParts parts = parse_entry_tail(*items, "define formal");
  return FormalDecl{*items->front().symbol(), std::move(parts.type), std::move(parts.doc)};
}

ReturnDecl parse_return(const Form& entry) {
  if (is_named_symbol(entry)) return ReturnDecl{*entry.symbol(), std::nullopt, "", {}};
  const FormList* items = entry.list();
  if (items == nullptr || items->empty() || !is_named_symbol(items->front())) {
    throw Error(entry.span, "define: malformed :returns entry");
  }
  EntryParts parts = parse_entry_tail(*items, "define :returns");
  return ReturnDecl{*items->front().symbol(), std::move(parts.type), std::move(parts.doc),
                    std::move(parts.options)};
}

std::vector<ReturnDecl> parse_returns(const Form& value) {
  std::vector<ReturnDecl> returns;
  if (value.head_name() == std::string_view("MV")) {
    const FormList& items = *value.list();
    for (std::size_t i = 1; i < items.size(); ++i) returns.push_back(parse_return(items[i]));
  } else {
    returns.push_back(parse_return(value));
  }
  return returns;
}

}  // namespace

DefineDecl parse_define_form(const Form& form, std::string_view file) {
  const FormList& items = *form.list();
  DefineDecl decl;
  decl.topic.name = require_name(form, "define");
  decl.definition = Definition{decl.topic.name, DefinitionKind::function, form, std::string(file)};
  if (items.size() < 3 || !(items[2].is_list() || (items[2].is_symbol() && items[2].symbol()->name == "NIL"))) {
    throw Error(form.span, "define: expected a formals list after the name");
  }
  std::set<SourceSymbol> seen;
  if (const FormList* formals = items[2].list()) {
    for (const Form& entry : *formals) {
      if (entry.is_symbol() && entry.symbol()->name.starts_with("&")) continue;
      FormalDecl formal = parse_formal(entry);
      if (!seen.insert(formal.name).second) {
        throw Error(entry.span, "define: duplicate formal '" + print_symbol(formal.name, formal.name.package) + "'");
      }
      decl.formals.push_back(std::move(formal));
    }
  }
  std::size_t i = 3;
  for (; i < items.size(); ++i) {
    const Form& item = items[i];
    if (is_separator(item)) {
      decl.has_separator = true;
      ++i;
      break;
    }
    if (item.is_keyword()) {
      if (i + 1 >= items.size()) throw Error(item.span, "define: option is missing its value");
      const Form& value = items[++i];
      if (item.symbol()->name == "RETURNS") {
        decl.returns = parse_returns(value);
      } else {
        apply_topic_option(decl.topic, *item.symbol(), value, "define");
      }
    } else {
      decl.body.push_back(item);
    }
  }
  // The definition shown for a define is the function it introduces.
  FormList defun{make_symbol_form(SourceSymbol{items[0].symbol()->package, "DEFUN"}), items[1]};
  FormList formal_names;
  if (const FormList* formals = items[2].list()) {
    for (const Form& entry : *formals) {
      formal_names.push_back(entry.is_list() && !entry.list()->empty() ? entry.list()->front() : entry);
    }
  }
  defun.push_back(make_list_form(std::move(formal_names)));
  for (const Form& b : decl.body) defun.push_back(b);
  decl.definition.form = make_list_form(std::move(defun));
  decl.definition.form.span = form.span;

  Scanner scanner(file);
  for (; i < items.size(); ++i) {
    if (is_separator(items[i])) throw Error(items[i].span, "define: /// may appear only once");
    scanner.scan(items[i], false, decl.related);
  }
  return decl;
}

AggregateDecl parse_aggregate_form(const Form& form) {
  const FormList& items = *form.list();
  AggregateDecl decl;
  decl.topic.name = require_name(form, "defaggregate");
  bool have_fields = false;
  std::set<SourceSymbol> seen;
  for (std::size_t i = 2; i < items.size(); ++i) {
    const Form& item = items[i];
    if (item.is_keyword()) {
      if (i + 1 >= items.size()) throw Error(item.span, "defaggregate: option is missing its value");
      const Form& value = items[++i];
      if (item.symbol()->name == "TAG") {
        if (value.is_symbol()) decl.tag = *value.symbol();
      } else {
        apply_topic_option(decl.topic, *item.symbol(), value, "defaggregate");
      }
      continue;
    }
    if (!item.is_list() || have_fields) {
      throw Error(item.span, "defaggregate: expected a single list of fields");
    }
    have_fields = true;
    for (const Form& entry : *item.list()) {
      FieldDecl field;
      if (is_named_symbol(entry)) {
        field.name = *entry.symbol();
      } else if (entry.is_list() && !entry.list()->empty() && is_named_symbol(entry.list()->front())) {
        field.name = *entry.list()->front().symbol();
        EntryParts parts = parse_entry_tail(*entry.list(), "defaggregate field");
        field.type = std::move(parts.type);
        field.doc = std::move(parts.doc);
      } else {
        throw Error(entry.span, "defaggregate: field is missing a name");
      }
      if (!seen.insert(field.name).second) {
        throw Error(entry.span, "defaggregate: duplicate field '" + downcase(field.name.name) + "'");
      }
      decl.fields.push_back(std::move(field));
    }
  }
  return decl;
}

std::vector<DocEvent> scan_events(const std::vector<Form>& forms, std::string_view file) {
  std::vector<DocEvent> out;
  Scanner scanner(file);
  for (const Form& form : forms) scanner.scan(form, false, out);
  return out;
}

}  // namespace sexdoc
