#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sexdoc/reader.hpp"

namespace sexdoc {

enum class DefinitionKind { function, macro, theorem, constant, other };

/// Capitalized label used in definition block headers ("Function", "Theorem", ...).
std::string_view kind_label(DefinitionKind kind);

/// Kind from a definition operator name (DEFUN, DEFTHM, ...).
DefinitionKind kind_for_operator(std::string_view head_name);

struct Definition {
  SourceSymbol name;
  DefinitionKind kind = DefinitionKind::other;
  Form form;
  std::string origin;
};

/// Name and documentation strings shared by every topic-producing form.
/// `parents` is empty-optional when the form gave no :parents at all, which
/// is what lets file default parents apply.
struct TopicDecl {
  SourceSymbol name;
  std::optional<std::vector<SourceSymbol>> parents;
  std::string short_text;
  std::string long_text;
};

struct DocEvent;

struct FormalDecl {
  SourceSymbol name;
  std::optional<Form> type;
  std::string doc;
};

struct ReturnDecl {
  SourceSymbol name;
  std::optional<Form> type;
  std::string doc;
  std::vector<Form> options;
};

struct DefineDecl {
  TopicDecl topic;
  std::vector<FormalDecl> formals;
  std::vector<ReturnDecl> returns;
  std::vector<Form> body;
  Definition definition;
  bool has_separator = false;
  std::vector<DocEvent> related;
};

struct FieldDecl {
  SourceSymbol name;
  std::optional<Form> type;
  std::string doc;
};

struct AggregateDecl {
  TopicDecl topic;
  std::optional<SourceSymbol> tag;
  std::vector<FieldDecl> fields;
};

struct DefineTopicEvent {
  TopicDecl topic;
};
struct SetDefaultParentsEvent {
  std::vector<SourceSymbol> parents;
};
struct SectionBeginEvent {
  TopicDecl section;
};
struct SectionEndEvent {
  SourceSymbol name;
};
struct RawDefinitionEvent {
  Definition definition;
};
struct AggregateDeclEvent {
  AggregateDecl decl;
};
struct DefineDeclEvent {
  DefineDecl decl;
};

using DocEventData = std::variant<DefineTopicEvent, SetDefaultParentsEvent, SectionBeginEvent,
                                  SectionEndEvent, RawDefinitionEvent, AggregateDeclEvent,
                                  DefineDeclEvent>;

/// One documentation-relevant source form. `local` marks events wrapped in
/// `(local ...)` at any depth.
struct DocEvent {
  DocEventData data;
  SourceSpan span;
  bool local = false;

  template <class T>
  const T* get() const {
    return std::get_if<T>(&data);
  }
};

/// Recognizes DEFXDOC, SET-DEFAULT-PARENTS, DEFSECTION, DEFINE, DEFAGGREGATE,
/// DEFUN, DEFMACRO, DEFTHM, DEFCONST and DEFCONG heads (by symbol name, in
/// any package). Other forms are ignored.
std::vector<DocEvent> scan_events(const std::vector<Form>& forms, std::string_view file);

/// Name given to `(defcong equiv1 equiv2 (fn ...) k)`, which has no explicit
/// name: EQUIV1-IMPLIES-EQUIV2-FN-K in the package of `fn`.
std::optional<SourceSymbol> defcong_name(const Form& form);

}  // namespace sexdoc

namespace sexdoc {

/// Parses `(define name formals ... [/// related-events...])`.
DefineDecl parse_define_form(const Form& form, std::string_view file);

/// Parses `(defaggregate name [options] (fields...) [options])`.
AggregateDecl parse_aggregate_form(const Form& form);

}  // namespace sexdoc
