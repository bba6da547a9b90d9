#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace sexdoc {

inline constexpr std::string_view keyword_package = "KEYWORD";

/// A package-qualified symbol. Both parts are non-empty and stored upcased.
struct SourceSymbol {
  std::string package;
  std::string name;

  auto operator<=>(const SourceSymbol&) const = default;

  bool is_keyword() const { return package == keyword_package; }

  /// `PACKAGE::NAME` (keywords print as `:NAME`).
  std::string qualified() const;

  /// `NAME` when `current_package` matches, `:NAME` for keywords,
  /// `PACKAGE::NAME` otherwise.
  std::string printed(std::string_view current_package) const;
};

/// Builds a symbol, upcasing both parts. Throws sexdoc::Error on empty parts.
SourceSymbol make_symbol(std::string_view package, std::string_view name);

std::string upcase(std::string_view text);
std::string downcase(std::string_view text);

}  // namespace sexdoc
