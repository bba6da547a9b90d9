#include "sexdoc/preprocess.hpp"

#include <algorithm>

#include "sexdoc/evaluator.hpp"
#include "sexdoc/topic_key.hpp"

namespace sexdoc {

namespace {

Error directive_error(const PreprocessContext& ctx, std::size_t offset, const std::string& message) {
  return Error(ctx.where, "in topic " + ctx.topic.qualified() + ": " + message + " at offset " +
                              std::to_string(offset));
}

void warn(const PreprocessContext& ctx, const char* code, std::string message) {
  if (!ctx.diagnostics) return;
  ctx.diagnostics->push_back(Diagnostic{code, ctx.where.file, ctx.where.line, std::move(message), ctx.topic});
}

std::string join_candidates(const std::vector<SourceSymbol>& candidates) {
  std::string out;
  for (const SourceSymbol& c : candidates) {
    if (!out.empty()) out += ", ";
    out += c.qualified();
  }
  return out;
}

std::string see_link(const SourceSymbol& target, std::string_view text) {
  return "<see topic='" + escape_attribute(encode_key(target)) + "'>" + escape_text(text) + "</see>";
}

std::string expand_see(std::string_view token, const PreprocessContext& ctx, bool quiet) {
  const Resolution r = resolve_name(*ctx.topics, token, ctx.package);
  if (r.symbol) return see_link(*r.symbol, token);
  if (!quiet) {
    if (r.ambiguous()) {
      warn(ctx, warning_code::ambiguous,
           "ambiguous topic name '" + std::string(token) + "' in " + ctx.topic.qualified() +
               "; candidates: " + join_candidates(r.candidates));
    } else {
      warn(ctx, warning_code::broken_link,
           "link to unknown topic '" + std::string(token) + "' in " + ctx.topic.qualified());
    }
  }
  return "<tt>" + escape_text(token) + "</tt>";
}

/// Drops one leading newline and trailing blank space so that @({ ... })
/// written across lines does not gain empty first or last lines.
std::string_view trim_block(std::string_view code) {
  if (!code.empty() && code.front() == '\n') code.remove_prefix(1);
  else if (code.size() >= 2 && code[0] == '\r' && code[1] == '\n') code.remove_prefix(2);
  while (!code.empty() && (code.back() == ' ' || code.back() == '\n' || code.back() == '\r' || code.back() == '\t')) {
    code.remove_suffix(1);
  }
  return code;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

/// Pieces escaped separately can still meet to form "@(" (a trailing @ of a
/// token before a paren); no such pair may survive expansion.
std::string escape_stray_openers(std::string text) {
  std::size_t pos = 0;
  while ((pos = text.find("@(", pos)) != std::string::npos) {
    text.replace(pos, 1, "&#64;");
    pos += 5;
  }
  return text;
}

}  // namespace

std::string autolink_code(std::string_view code, const PreprocessContext& ctx) {
  std::string out;
  std::size_t i = 0;
  while (i < code.size()) {
    const char c = code[i];
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < code.size() && code[j] != '"') j += code[j] == '\\' ? 2 : 1;
      j = std::min(j + 1, code.size());
      out += escape_text(code.substr(i, j - i));
      i = j;
    } else if (c == ';') {
      std::size_t j = code.find('\n', i);
      if (j == std::string_view::npos) j = code.size();
      out += escape_text(code.substr(i, j - i));
      i = j;
    } else if (is_symbol_constituent(c) || c == ':') {
      std::size_t j = i;
      while (j < code.size() && (is_symbol_constituent(code[j]) || code[j] == ':')) ++j;
      const std::string_view token = code.substr(i, j - i);
      const Resolution r = token.front() == ':' ? Resolution{} : resolve_name(*ctx.topics, token, ctx.package);
      out += r.symbol ? see_link(*r.symbol, token) : escape_text(token);
      i = j;
    } else {
      // Runs of plain characters are escaped together so that "@(" stays escaped.
      std::size_t j = i + 1;
      while (j < code.size() && code[j] != '"' && code[j] != ';' && code[j] != ':' &&
             !is_symbol_constituent(code[j])) {
        ++j;
      }
      out += escape_text(code.substr(i, j - i));
      i = j;
    }
  }
  return escape_stray_openers(std::move(out));
}

std::string expand_def(std::string_view name_token, const PreprocessContext& ctx) {
  const Definition* def = resolve_definition(*ctx.world, name_token, ctx.package);
  if (!def) {
    warn(ctx, warning_code::missing_definition,
         "no definition named '" + std::string(name_token) + "' for @(def) in " + ctx.topic.qualified());
    return "<box>missing definition: " + escape_text(name_token) + "</box>";
  }
  std::string out = "<p><b>";
  out += kind_label(def->kind);
  out += ":</b> <tt>" + escape_text(print_symbol(def->name, ctx.package)) + "</tt></p>";
  out += "<code>\n" + autolink_code(pretty_print_form(def->form, ctx.package), ctx) + "\n</code>";
  return out;
}

std::string eval_directive(std::string_view expr_text, const PreprocessContext& ctx) {
  const Form form = read_single_form(expr_text, ctx.package, ctx.where.file);
  return escape_text(print_value(evaluate(form, *ctx.world), ctx.package));
}

std::string preprocess(std::string_view raw, const PreprocessContext& ctx) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    const std::size_t at = raw.find('@', i);
    if (at == std::string_view::npos) {
      out.append(raw.substr(i));
      break;
    }
    out.append(raw.substr(i, at - i));
    if (at + 1 < raw.size() && raw[at + 1] == '@') {
      out += "&#64;";
      i = at + 2;
      continue;
    }
    if (at + 1 >= raw.size() || raw[at + 1] != '(') {
      out.push_back('@');
      i = at + 1;
      continue;
    }
    const std::size_t body = at + 2;
    const char kind = body < raw.size() ? raw[body] : '\0';
    if (kind == '\'' || kind == '{' || kind == '`') {
      const std::string_view closer = kind == '\'' ? "')" : kind == '{' ? "})" : "`)";
      const std::size_t end = raw.find(closer, body + 1);
      if (end == std::string_view::npos) {
        throw directive_error(ctx, at, std::string("unterminated @(") + kind + " directive");
      }
      const std::string_view content = raw.substr(body + 1, end - body - 1);
      if (kind == '\'') {
        out += "<code>" + autolink_code(content, ctx) + "</code>";
      } else if (kind == '{') {
        out += "<code>\n" + autolink_code(trim_block(content), ctx) + "\n</code>";
      } else {
        try {
          out += eval_directive(content, ctx);
        } catch (const Error& e) {
          throw directive_error(ctx, at, std::string("in @(`...`) directive: ") + e.what());
        }
      }
      i = end + 2;
      continue;
    }
    const std::size_t close = raw.find(')', body);
    if (close == std::string_view::npos) throw directive_error(ctx, at, "unterminated @( directive");
    std::string_view inside = raw.substr(body, close - body);
    if (inside.find('(') != std::string_view::npos) {
      throw directive_error(ctx, at, "malformed directive argument (nested parentheses)");
    }
    std::size_t h = 0;
    while (h < inside.size() && !is_space(inside[h])) ++h;
    const std::string_view head = inside.substr(0, h);
    std::string_view arg = inside.substr(h);
    while (!arg.empty() && is_space(arg.front())) arg.remove_prefix(1);
    while (!arg.empty() && is_space(arg.back())) arg.remove_suffix(1);
    const bool single_token =
        !arg.empty() && std::none_of(arg.begin(), arg.end(), [](char c) { return is_space(c); });
    if (head == "see" || head == "tsee" || head == "def") {
      if (!single_token || !parse_symbol_token(arg, ctx.package)) {
        throw directive_error(ctx, at, "malformed argument to @(" + std::string(head) + ")");
      }
      out += head == "def" ? expand_def(arg, ctx) : expand_see(arg, ctx, head == "tsee");
    } else {
      throw directive_error(ctx, at, "unknown directive @(" + std::string(head) + " ...)");
    }
    i = close + 1;
  }
  return escape_stray_openers(std::move(out));
}

std::size_t count_directives(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] != '@') continue;
    if (text[i + 1] == '@') {
      ++i;
    } else if (text[i + 1] == '(') {
      ++count;
    }
  }
  return count;
}

namespace {

void check_links(std::vector<MarkupNode>& nodes, const PreprocessContext& ctx, std::string_view field) {
  for (MarkupNode& node : nodes) {
    MarkupElement* e = node.element();
    if (!e) continue;
    check_links(e->children, ctx, field);
    if (e->tag != "see") continue;
    const std::string& key = *e->attribute("topic");
    const std::optional<SourceSymbol> target = try_decode_key(key);
    if (target && ctx.topics->find(*target)) continue;
    warn(ctx, warning_code::broken_link,
         "<see> in " + std::string(field) + " of " + ctx.topic.qualified() + " names unknown topic key '" + key + "'");
    e->tag = "tt";
    e->attributes.clear();
  }
}

}  // namespace

MarkupTree parse_checked_markup(std::string_view markup, const PreprocessContext& ctx, std::string_view field) {
  MarkupTree tree;
  try {
    tree = parse_markup(markup);
  } catch (const MarkupError& e) {
    throw Error(ctx.where, "in " + std::string(field) + " of topic " + ctx.topic.qualified() + ": " + e.what());
  }
  check_links(tree.children, ctx, field);
  return tree;
}

}  // namespace sexdoc
