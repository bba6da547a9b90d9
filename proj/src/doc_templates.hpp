#pragma once

#include <string>
#include <vector>

namespace sexdoc::templates {

/// Printed (lowercase, package-relative) pieces a template needs.
struct EntryText {
  std::string name;
  /// Markup for the type: a @(tsee ...) or @('...') directive, or empty.
  std::string type;
  std::string doc;
};

std::string definitions_heading();
std::string def_line(const std::string& printed_name);

std::string signature_block(const std::vector<EntryText>& formals, const std::vector<EntryText>& returns);

std::string aggregate_intro(const std::string& name, const std::vector<EntryText>& fields);
std::string constructor_short(const std::string& recognizer);
std::string constructor_long(const std::string& constructor, const std::vector<EntryText>& fields);
std::string accessor_short(const std::string& field, const std::string& doc);
std::string accessor_long(const std::string& accessor, const std::string& recognizer, const EntryText& field);

}  // namespace sexdoc::templates
