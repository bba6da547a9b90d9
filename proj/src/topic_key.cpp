#include "sexdoc/topic_key.hpp"

#include "sexdoc/diagnostics.hpp"

namespace sexdoc {

namespace {

constexpr std::string_view separator = "____";
constexpr char hex_digits[] = "0123456789ABCDEF";

bool keeps_verbatim(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '-';
}

void escape_into(std::string& out, std::string_view text) {
  for (char c : text) {
    if (keeps_verbatim(c)) {
      out.push_back(c);
      continue;
    }
    const auto byte = static_cast<unsigned char>(c);
    out.push_back('_');
    out.push_back(hex_digits[byte & 0x0F]);
    out.push_back(hex_digits[byte >> 4]);
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::optional<std::string> unescape(std::string_view text, std::string& problem) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (keeps_verbatim(c)) {
      out.push_back(c);
      continue;
    }
    if (c != '_') {
      problem = std::string("unexpected character '") + c + "'";
      return std::nullopt;
    }
    if (i + 2 >= text.size()) {
      problem = "truncated escape";
      return std::nullopt;
    }
    const int low = hex_value(text[i + 1]);
    const int high = hex_value(text[i + 2]);
    if (low < 0 || high < 0) {
      problem = "malformed escape '" + std::string(text.substr(i, 3)) + "'";
      return std::nullopt;
    }
    const char decoded = static_cast<char>((high << 4) | low);
    if (keeps_verbatim(decoded)) {
      problem = "non-canonical escape '" + std::string(text.substr(i, 3)) + "'";
      return std::nullopt;
    }
    out.push_back(decoded);
    i += 2;
  }
  return out;
}

std::optional<SourceSymbol> decode(std::string_view key, std::string& problem) {
  const std::size_t sep = key.find(separator);
  if (sep == std::string_view::npos) {
    problem = "missing '____' package separator";
    return std::nullopt;
  }
  std::optional<std::string> package = unescape(key.substr(0, sep), problem);
  if (!package) return std::nullopt;
  std::optional<std::string> name = unescape(key.substr(sep + separator.size()), problem);
  if (!name) return std::nullopt;
  if (package->empty() || name->empty()) {
    problem = "empty package or name";
    return std::nullopt;
  }
  return SourceSymbol{std::move(*package), std::move(*name)};
}

}  // namespace

std::string encode_key(const SourceSymbol& symbol) {
  std::string out;
  out.reserve(symbol.package.size() + symbol.name.size() + separator.size());
  escape_into(out, symbol.package);
  out += separator;
  escape_into(out, symbol.name);
  return out;
}

SourceSymbol decode_key(std::string_view key) {
  std::string problem;
  std::optional<SourceSymbol> symbol = decode(key, problem);
  if (!symbol) throw Error("malformed topic key '" + std::string(key) + "': " + problem);
  return std::move(*symbol);
}

std::optional<SourceSymbol> try_decode_key(std::string_view key) {
  std::string problem;
  return decode(key, problem);
}

}  // namespace sexdoc
