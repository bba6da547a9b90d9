#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sexdoc/diagnostics.hpp"

namespace sexdoc {

struct MarkupNode;

struct MarkupElement {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<MarkupNode> children;

  /// Value of attribute `name`, or null.
  const std::string* attribute(std::string_view name) const;
};

/// An element or a run of (decoded) text.
struct MarkupNode {
  std::variant<MarkupElement, std::string> value;

  const MarkupElement* element() const { return std::get_if<MarkupElement>(&value); }
  const std::string* text() const { return std::get_if<std::string>(&value); }
  MarkupElement* element() { return std::get_if<MarkupElement>(&value); }
};

bool operator==(const MarkupElement& a, const MarkupElement& b);
bool operator==(const MarkupNode& a, const MarkupNode& b);

/// Children of an implicit root.
struct MarkupTree {
  std::vector<MarkupNode> children;
  friend bool operator==(const MarkupTree& a, const MarkupTree& b) { return a.children == b.children; }
};

class MarkupError : public Error {
 public:
  MarkupError(std::size_t offset, const std::string& message);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

bool is_known_tag(std::string_view tag);

/// Elements that may carry a given attribute; others reject all attributes.
bool is_allowed_attribute(std::string_view tag, std::string_view attribute);

/// Strict parse: balanced tags from the whitelist, the entities
/// &lt; &gt; &amp; &quot; &apos; &nbsp; and numeric references.
/// Throws MarkupError with byte offsets.
MarkupTree parse_markup(std::string_view text);

/// Canonical form; parse_markup(serialize(t)) == t for trees without
/// adjacent or empty text nodes.
std::string serialize(const MarkupTree& tree);
std::string serialize(const std::vector<MarkupNode>& nodes);

/// Escapes text content: < > & and the two-character sequence "@(".
std::string escape_text(std::string_view text);
std::string escape_attribute(std::string_view text);

/// Plain text: text nodes concatenated (block elements separated by a
/// space), whitespace runs collapsed to one space, trimmed.
std::string extract_text(const MarkupTree& tree);
std::string extract_text(const std::vector<MarkupNode>& nodes);

}  // namespace sexdoc
