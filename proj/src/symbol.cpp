#include "sexdoc/symbol.hpp"

#include "sexdoc/diagnostics.hpp"

namespace sexdoc {

std::string upcase(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

std::string downcase(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

SourceSymbol make_symbol(std::string_view package, std::string_view name) {
  if (package.empty() || name.empty()) {
    throw Error("symbol requires a non-empty package and name (got '" + std::string(package) +
                "::" + std::string(name) + "')");
  }
  return SourceSymbol{upcase(package), upcase(name)};
}

std::string SourceSymbol::qualified() const {
  if (is_keyword()) return ":" + name;
  return package + "::" + name;
}

std::string SourceSymbol::printed(std::string_view current_package) const {
  if (is_keyword()) return ":" + name;
  if (package == current_package) return name;
  return package + "::" + name;
}

}  // namespace sexdoc
