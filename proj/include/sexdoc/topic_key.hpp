#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sexdoc/symbol.hpp"

namespace sexdoc {

/// File- and URL-safe encoding of a symbol: escape(package) + "____" +
/// escape(name). The escape keeps [A-Z0-9.-] and writes every other byte as
/// '_' plus two uppercase hex digits, low nibble first ('<' is "_C3").
std::string encode_key(const SourceSymbol& symbol);

/// Inverse of encode_key. Throws sexdoc::Error on malformed keys.
SourceSymbol decode_key(std::string_view key);

std::optional<SourceSymbol> try_decode_key(std::string_view key);

}  // namespace sexdoc
