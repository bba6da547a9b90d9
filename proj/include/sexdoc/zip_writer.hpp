#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sexdoc {

/// A stored (uncompressed) zip archive of the given (path, bytes) entries,
/// in the given order, with a fixed timestamp so the bytes are reproducible.
std::string make_zip(const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace sexdoc
