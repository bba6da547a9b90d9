#include "sexdoc/diagnostics.hpp"

#include <string_view>

namespace sexdoc {

std::string SourceSpan::describe() const {
  std::string out = file.empty() ? std::string("<input>") : file;
  if (line > 0) {
    out += ":" + std::to_string(line);
    if (column > 0) out += ":" + std::to_string(column);
  }
  return out;
}

Error::Error(const std::string& message) : std::runtime_error(message) {}

Error::Error(const SourceSpan& where, const std::string& message)
    : std::runtime_error(where.describe() + ": " + message) {}

std::string Diagnostic::format() const {
  std::string out = file.empty() ? std::string("<generated>") : file;
  out += ":" + std::to_string(line) + ": " + code + ": " + message;
  return out;
}

bool is_link_problem(const Diagnostic& d) {
  const std::string_view code = d.code;
  return code == warning_code::broken_link || code == warning_code::ambiguous ||
         code == warning_code::missing_definition;
}

}  // namespace sexdoc
