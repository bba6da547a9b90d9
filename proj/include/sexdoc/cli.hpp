#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sexdoc {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int content_error = 1;
inline constexpr int usage_error = 2;
}  // namespace exit_code

/// The sexdoc command line (`args` excludes the program name):
///
///   sexdoc build [--out DIR] [--force] [--strict-lint] [--archive]
///   sexdoc doc TOPIC [--stdin]
///   sexdoc lint
///   sexdoc serve [--build] [--port N] [--host H]
///
/// The project comes from --config, else $SEXDOC_CONFIG, else ./sexdoc.cfg,
/// or from --source files when no config exists. Diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Levenshtein distance.
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace sexdoc
