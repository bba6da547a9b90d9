#pragma once

#include <cstddef>
#include <string>

#include "sexdoc/markup.hpp"
#include "sexdoc/registry.hpp"

namespace sexdoc {

struct TextRenderConfig {
  std::size_t width = 75;
  std::size_t indent = 2;
};

/// The :doc view of a topic whose strings have already been preprocessed
/// and parsed:
///
///   PKG::NAME -- ORIGIN
///   Parents: A, B and C.
///
///     Short text.
///
///   Long text...
std::string render_topic_text(const Topic& topic, const MarkupTree& short_tree, const MarkupTree& long_tree,
                              const TextRenderConfig& cfg = {});

/// "A", "A and B", "A, B and C".
std::string join_parent_names(const std::vector<std::string>& names);

/// Greedy word fill. Words never break; a word longer than the line sits
/// alone on its own line.
std::vector<std::string> wrap_words(const std::vector<std::string>& words, std::size_t indent, std::size_t width);

/// Number of code points in a UTF-8 string.
std::size_t display_width(std::string_view text);

}  // namespace sexdoc
