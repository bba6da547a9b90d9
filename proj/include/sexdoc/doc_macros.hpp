#pragma once

#include <string>
#include <vector>

#include "sexdoc/events.hpp"

namespace sexdoc {

/// A defsection with its body events (nested sections included as their
/// begin/end markers).
struct SectionDecl {
  TopicDecl topic;
  std::vector<DocEvent> body;
};

/// Names of the non-local definitions submitted directly in `body`
/// (definitions inside nested sections belong to those sections).
std::vector<SourceSymbol> collected_names(const std::vector<DocEvent>& body);

/// "<h3>Definitions and Theorems</h3>" followed by one @(def) per name;
/// empty when `names` is.
std::string definitions_listing(const std::vector<SourceSymbol>& names, const std::string& package);

/// The section topic: long gains the definitions listing.
std::vector<DocEvent> elaborate_section(const SectionDecl& d, const SourceSpan& where);

/// The function topic with its signature block, followed by RawDefinition
/// events for the function and each non-local related event.
std::vector<DocEvent> elaborate_define(const DefineDecl& d, const SourceSpan& where);

/// Recognizer, constructor and one accessor topic per field.
std::vector<DocEvent> elaborate_aggregate(const AggregateDecl& d, const SourceSpan& where);

/// Replaces section markers and macro declarations by the topic events they
/// produce, keeping everything else in order. The result contains only
/// DefineTopic, SetDefaultParents and RawDefinition events.
std::vector<DocEvent> elaborate_events(const std::vector<DocEvent>& events);

}  // namespace sexdoc
