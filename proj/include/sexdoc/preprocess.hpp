#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sexdoc/diagnostics.hpp"
#include "sexdoc/markup.hpp"
#include "sexdoc/registry.hpp"
#include "sexdoc/world.hpp"

namespace sexdoc {

/// What a directive can see while a topic's strings are expanded.
struct PreprocessContext {
  const World* world = nullptr;
  const TopicSet* topics = nullptr;
  /// Package used to read and print symbols (the topic's package).
  std::string package;
  SourceSymbol topic;
  /// Where the topic was defined; used for errors and warnings.
  SourceSpan where;
  /// Warnings are appended here in the order they arise.
  std::vector<Diagnostic>* diagnostics = nullptr;
};

/// Expands every @(...) directive in `raw`:
///   @(see X)     link to topic X (a <tt> and a warning when X is unknown)
///   @(def X)     definition header and pretty-printed form
///   @('code')    inline <code>, closed by the first ')
///   @({code})    block <code>, closed by the first })
///   @(`expr`)    result of evaluating expr
///   @@           a literal @
/// Throws Error on unterminated directives, unknown heads and bad arguments.
std::string preprocess(std::string_view raw, const PreprocessContext& ctx);

/// Escaped code text with links around every token naming a topic.
/// String literals and ; comments are never linked.
std::string autolink_code(std::string_view code, const PreprocessContext& ctx);

/// Markup for @(def NAME).
std::string expand_def(std::string_view name_token, const PreprocessContext& ctx);

/// Escaped printed result of evaluating `expr_text` (see evaluator.hpp).
std::string eval_directive(std::string_view expr_text, const PreprocessContext& ctx);

/// Number of directive openings (@( not produced by @@) in `text`.
std::size_t count_directives(std::string_view text);

/// Parses preprocessed markup and replaces every <see> whose topic key does
/// not name a topic with <tt>, warning once per element.
MarkupTree parse_checked_markup(std::string_view markup, const PreprocessContext& ctx,
                                std::string_view field);

}  // namespace sexdoc
