#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sexdoc/symbol.hpp"

namespace sexdoc {

struct SourceSpan {
  std::string file;
  int line = 0;
  int column = 0;

  /// `file:line:column`, dropping parts that are unknown.
  std::string describe() const;
};

/// Hard failure of the pipeline. The message already carries its location.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message);
  Error(const SourceSpan& where, const std::string& message);
};

namespace warning_code {
inline constexpr const char* redefinition = "W-REDEF";
inline constexpr const char* orphan = "W-ORPHAN";
inline constexpr const char* cycle = "W-CYCLE";
inline constexpr const char* unreachable = "W-UNREACHABLE";
inline constexpr const char* root_parents = "W-ROOT-PARENTS";
inline constexpr const char* broken_link = "W-BROKEN-LINK";
inline constexpr const char* ambiguous = "W-AMBIG";
inline constexpr const char* missing_definition = "W-MISSING-DEF";
}  // namespace warning_code

/// A non-fatal finding. Lint prints these; strict lint promotes link problems.
struct Diagnostic {
  std::string code;
  std::string file;
  int line = 0;
  std::string message;
  std::optional<SourceSymbol> topic;

  /// `file:line: code: message`
  std::string format() const;
};

/// True for the codes that --strict-lint turns into build errors.
bool is_link_problem(const Diagnostic& d);

}  // namespace sexdoc
