#include <algorithm>
#include <set>

#include "sexdoc/config.hpp"
#include "sexdoc/diagnostics.hpp"

namespace sexdoc {

namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split_segments(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    if (end > start) parts.push_back(path.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

bool match_segment(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

bool match_parts(const std::vector<std::string_view>& pat, std::size_t i, const std::vector<std::string_view>& path,
                 std::size_t j) {
  if (i == pat.size()) return j == path.size();
  if (pat[i] == "**") {
    for (std::size_t k = j; k <= path.size(); ++k) {
      if (match_parts(pat, i + 1, path, k)) return true;
    }
    return false;
  }
  return j < path.size() && match_segment(pat[i], path[j]) && match_parts(pat, i + 1, path, j + 1);
}

bool has_wildcard(std::string_view s) { return s.find_first_of("*?") != std::string_view::npos; }

}  // namespace

bool glob_match(std::string_view pattern, std::string_view path) {
  return match_parts(split_segments(pattern), 0, split_segments(path), 0);
}

std::vector<fs::path> expand_sources(const std::vector<std::string>& patterns, const fs::path& base_dir) {
  std::vector<fs::path> out;
  std::set<fs::path> seen;
  auto add = [&](const fs::path& p) {
    const fs::path normal = p.lexically_normal();
    if (seen.insert(normal).second) out.push_back(normal);
  };
  for (const std::string& pattern : patterns) {
    const fs::path as_path(pattern);
    const fs::path anchored = as_path.is_absolute() ? as_path : base_dir / as_path;
    if (!has_wildcard(pattern)) {
      if (!fs::is_regular_file(anchored)) throw Error("source file '" + anchored.generic_string() + "' does not exist");
      add(anchored);
      continue;
    }
    // Walk from the deepest directory that has no wildcard in it.
    const std::string anchored_text = anchored.generic_string();
    const std::vector<std::string_view> parts = split_segments(anchored_text);
    fs::path root = anchored_text.starts_with('/') ? fs::path("/") : fs::path();
    std::size_t first_wild = 0;
    while (first_wild < parts.size() && !has_wildcard(parts[first_wild])) root /= fs::path(std::string(parts[first_wild++]));
    if (root.empty()) root = ".";
    const std::string rest_pattern = [&] {
      std::string s;
      for (std::size_t i = first_wild; i < parts.size(); ++i) {
        if (!s.empty()) s += '/';
        s += parts[i];
      }
      return s;
    }();
    std::vector<fs::path> matches;
    if (fs::is_directory(root)) {
      for (const fs::directory_entry& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        const std::string relative = entry.path().lexically_relative(root).generic_string();
        if (glob_match(rest_pattern, relative)) matches.push_back(entry.path());
      }
    }
    if (matches.empty()) throw Error("source pattern '" + pattern + "' matches no files");
    std::sort(matches.begin(), matches.end());
    for (const fs::path& m : matches) add(m);
  }
  return out;
}

}  // namespace sexdoc
