#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sexdoc/diagnostics.hpp"
#include "sexdoc/symbol.hpp"

namespace sexdoc {

struct Form;
using FormList = std::vector<Form>;

/// One datum read from source: symbol, string, integer, or list.
struct Form {
  std::variant<SourceSymbol, std::string, std::int64_t, FormList> value;
  SourceSpan span;

  bool is_symbol() const { return std::holds_alternative<SourceSymbol>(value); }
  bool is_string() const { return std::holds_alternative<std::string>(value); }
  bool is_integer() const { return std::holds_alternative<std::int64_t>(value); }
  bool is_list() const { return std::holds_alternative<FormList>(value); }

  const SourceSymbol* symbol() const { return std::get_if<SourceSymbol>(&value); }
  const std::string* string() const { return std::get_if<std::string>(&value); }
  const std::int64_t* integer() const { return std::get_if<std::int64_t>(&value); }
  const FormList* list() const { return std::get_if<FormList>(&value); }

  bool is_keyword() const { return is_symbol() && symbol()->is_keyword(); }

  /// Name of the head symbol when this is a list starting with a symbol.
  std::optional<std::string_view> head_name() const;

  /// Structural equality. Source spans are ignored.
  friend bool operator==(const Form& a, const Form& b) { return a.value == b.value; }
};

Form make_symbol_form(SourceSymbol s);
Form make_string_form(std::string s);
Form make_integer_form(std::int64_t v);
Form make_list_form(FormList items);

/// Package of the symbol produced by the `'x` shorthand.
inline constexpr std::string_view quote_package = "COMMON-LISP";

/// Reads every top-level form of `text`. Unqualified symbols land in
/// `default_package`; a top-level `(in-package "P")` switches to P for the
/// remaining forms. Throws sexdoc::Error with file/line/column on bad input.
std::vector<Form> read_forms(std::string_view text, std::string_view default_package,
                             std::string_view file = "<input>");

/// Reads exactly one form; anything but whitespace/comments after it is an error.
Form read_single_form(std::string_view text, std::string_view default_package,
                      std::string_view file = "<input>");

/// Characters that may appear in a symbol token besides the package colons.
bool is_symbol_constituent(char c);

/// Interprets a bare token (as the reader would) without throwing.
/// Returns nothing for integers or malformed tokens.
std::optional<SourceSymbol> parse_symbol_token(std::string_view token,
                                               std::string_view current_package);

enum class LetterCase { upper, lower };

/// Single-line printing; the inverse of read_single_form under `package`.
std::string print_form(const Form& form, std::string_view package,
                       LetterCase letter_case = LetterCase::upper);

/// The canonical multi-line layout used for definition blocks: lowercase
/// symbols, lists that do not fit in `width` columns broken one element per
/// line with two spaces of indent per depth.
std::string pretty_print_form(const Form& form, std::string_view package, std::size_t width = 72);

/// Printed symbol text for display: lowercase, qualified only when foreign.
std::string print_symbol(const SourceSymbol& symbol, std::string_view package,
                         LetterCase letter_case = LetterCase::lower);

/// Validates UTF-8; throws sexdoc::Error pointing at the first bad byte.
void check_utf8(std::string_view text, std::string_view file);

}  // namespace sexdoc
