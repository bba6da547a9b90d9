#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "sexdoc/reader.hpp"
#include "sexdoc/world.hpp"

namespace sexdoc {

/// Integer, string, or quoted datum.
using Value = std::variant<std::int64_t, std::string, Form>;

/// Evaluates a small pure language: integer and string literals, quote,
/// + - * over integers, len of a list, string-append, and DEFCONST
/// constants from `world`. Throws Error for anything else.
Value evaluate(const Form& form, const World& world);

/// Strings print bare, integers in decimal, data in lowercase.
std::string print_value(const Value& value, std::string_view package);

}  // namespace sexdoc
