#include "sexdoc/render_text.hpp"

#include <algorithm>

namespace sexdoc {

namespace {

// Inline text is accumulated with two private markers: a space that must
// not break (inside code and &nbsp;), and a forced line break (<br/>).
constexpr char hard_space = '\x01';
constexpr char line_break = '\x02';
constexpr std::string_view nbsp = "\xC2\xA0";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_heading(std::string_view tag) { return tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '5'; }

bool is_block_code(const MarkupElement& e) {
  if (e.tag != "code") return false;
  for (const MarkupNode& child : e.children) {
    if (const std::string* t = child.text(); t && t->find('\n') != std::string::npos) return true;
  }
  return false;
}

std::string replace_nbsp(std::string text) {
  std::size_t pos = 0;
  while ((pos = text.find(nbsp, pos)) != std::string::npos) text.replace(pos, nbsp.size(), 1, hard_space);
  return text;
}

std::string plain_text(const std::vector<MarkupNode>& nodes) {
  std::string out;
  for (const MarkupNode& node : nodes) {
    if (const std::string* t = node.text()) out += *t;
    else out += plain_text(node.element()->children);
  }
  return out;
}

struct Block {
  std::vector<std::string> lines;
  bool heading = false;
};

class TextRenderer {
 public:
  explicit TextRenderer(const TextRenderConfig& cfg) : cfg_(cfg) {}

  std::vector<Block> blocks(const std::vector<MarkupNode>& nodes, std::size_t indent) {
    std::vector<Block> out;
    std::string inline_text;
    auto flush = [&] {
      Block b{fill(inline_text, indent), false};
      if (!b.lines.empty()) out.push_back(std::move(b));
      inline_text.clear();
    };
    for (const MarkupNode& node : nodes) {
      const MarkupElement* e = node.element();
      if (!e) {
        inline_text += *node.text();
        continue;
      }
      if (e->tag == "p" || e->tag == "box" || e->tag == "blockquote") {
        flush();
        append(out, blocks(e->children, e->tag == "blockquote" ? indent + 2 : indent));
      } else if (is_heading(e->tag)) {
        flush();
        std::string text;
        inline_into(text, e->children);
        Block b{fill(text, 0), true};
        if (b.lines.empty()) b.lines.push_back("");
        out.push_back(std::move(b));
      } else if (is_block_code(*e)) {
        flush();
        out.push_back(code_block(plain_text(e->children), indent + 2));
      } else if (e->tag == "ul" || e->tag == "ol") {
        flush();
        Block list = list_block(*e, indent);
        if (!list.lines.empty()) out.push_back(std::move(list));
      } else if (e->tag == "dl") {
        flush();
        Block list = definition_block(*e, indent);
        if (!list.lines.empty()) out.push_back(std::move(list));
      } else if (e->tag == "table") {
        flush();
        Block table = table_block(*e, indent);
        if (!table.lines.empty()) out.push_back(std::move(table));
      } else if (e->tag == "li" || e->tag == "dt" || e->tag == "dd" || e->tag == "tr") {
        flush();
        append(out, blocks(e->children, indent));
      } else {
        inline_into(inline_text, {node});
      }
    }
    flush();
    return out;
  }

 private:
  static void append(std::vector<Block>& out, std::vector<Block> more) {
    for (Block& b : more) out.push_back(std::move(b));
  }

  void inline_into(std::string& out, const std::vector<MarkupNode>& nodes) {
    for (const MarkupNode& node : nodes) {
      if (const std::string* t = node.text()) {
        out += *t;
        continue;
      }
      const MarkupElement& e = *node.element();
      if (e.tag == "see") {
        out += "[";
        inline_into(out, e.children);
        out += "]";
      } else if (e.tag == "a") {
        out += "{";
        inline_into(out, e.children);
        out += " | " + *e.attribute("href") + "}";
      } else if (e.tag == "code" || e.tag == "tt") {
        std::string inner;
        inline_into(inner, e.children);
        std::string glued;
        bool space = false;
        for (char c : inner) {
          if (is_space(c)) {
            space = !glued.empty();
            continue;
          }
          if (space) glued.push_back(hard_space);
          space = false;
          glued.push_back(c);
        }
        out += glued;
      } else if (e.tag == "br") {
        out.push_back(line_break);
      } else if (e.tag == "img" || e.tag == "icon") {
        if (const std::string* alt = e.attribute("alt")) out += *alt;
      } else {
        inline_into(out, e.children);
      }
    }
  }

  std::vector<std::string> fill(const std::string& text, std::size_t indent) const {
    std::vector<std::string> lines;
    std::vector<std::string> words;
    std::string word;
    auto end_word = [&] {
      if (!word.empty()) {
        std::replace(word.begin(), word.end(), hard_space, ' ');
        words.push_back(std::move(word));
      }
      word.clear();
    };
    auto end_line = [&] {
      end_word();
      for (std::string& line : wrap_words(words, indent, cfg_.width)) lines.push_back(std::move(line));
      words.clear();
    };
    const std::string normalized = replace_nbsp(text);
    bool any_break = false;
    for (char c : normalized) {
      if (c == line_break) {
        end_line();
        any_break = true;
      } else if (is_space(c)) {
        end_word();
      } else {
        word.push_back(c);
      }
    }
    end_line();
    if (any_break) {
      while (!lines.empty() && lines.back().empty()) lines.pop_back();
    }
    return lines;
  }

  Block code_block(const std::string& text, std::size_t indent) const {
    std::string_view body = text;
    while (!body.empty() && (body.front() == '\n' || body.front() == '\r')) body.remove_prefix(1);
    while (!body.empty() && is_space(body.back())) body.remove_suffix(1);
    Block b;
    std::size_t start = 0;
    while (start <= body.size()) {
      std::size_t end = body.find('\n', start);
      if (end == std::string_view::npos) end = body.size();
      std::string_view line = body.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      b.lines.push_back(line.empty() ? std::string() : std::string(indent, ' ') + std::string(line));
      start = end + 1;
    }
    return b;
  }

  Block list_block(const MarkupElement& list, std::size_t indent) {
    Block out;
    int number = 0;
    for (const MarkupNode& node : list.children) {
      const MarkupElement* item = node.element();
      if (!item || item->tag != "li") continue;
      const std::string marker = list.tag == "ol" ? std::to_string(++number) + ". " : "- ";
      std::vector<std::string> lines = flatten(blocks(item->children, indent + marker.size()));
      if (lines.empty()) lines.push_back(std::string(indent + marker.size(), ' '));
      lines.front().replace(indent, marker.size(), marker);
      for (std::string& line : lines) out.lines.push_back(std::move(line));
    }
    return out;
  }

  Block definition_block(const MarkupElement& list, std::size_t indent) {
    Block out;
    for (const MarkupNode& node : list.children) {
      const MarkupElement* item = node.element();
      if (!item) continue;
      const std::size_t at = item->tag == "dd" ? indent + 2 : indent;
      for (std::string& line : flatten(blocks(item->children, at))) out.lines.push_back(std::move(line));
    }
    return out;
  }

  Block table_block(const MarkupElement& table, std::size_t indent) {
    Block out;
    for (const MarkupNode& row : table.children) {
      const MarkupElement* tr = row.element();
      if (!tr) continue;
      std::string text;
      for (const MarkupNode& cell : tr->children) {
        const MarkupElement* td = cell.element();
        if (!td) continue;
        if (!text.empty()) text += " | ";
        inline_into(text, td->children);
      }
      for (std::string& line : fill(text, indent)) out.lines.push_back(std::move(line));
    }
    return out;
  }

  static std::vector<std::string> flatten(const std::vector<Block>& blocks) {
    std::vector<std::string> lines;
    for (const Block& b : blocks) {
      if (!lines.empty()) lines.emplace_back();
      lines.insert(lines.end(), b.lines.begin(), b.lines.end());
    }
    return lines;
  }

  const TextRenderConfig& cfg_;
};

}  // namespace

std::size_t display_width(std::string_view text) {
  return static_cast<std::size_t>(
      std::count_if(text.begin(), text.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::vector<std::string> wrap_words(const std::vector<std::string>& words, std::size_t indent, std::size_t width) {
  std::vector<std::string> lines;
  std::string line;
  std::size_t used = 0;
  for (const std::string& word : words) {
    const std::size_t w = display_width(word);
    if (!line.empty() && used + 1 + w > width) {
      lines.push_back(std::move(line));
      line.clear();
    }
    if (line.empty()) {
      line = std::string(indent, ' ') + word;
      used = indent + w;
    } else {
      line += ' ';
      line += word;
      used += 1 + w;
    }
  }
  if (!line.empty()) lines.push_back(std::move(line));
  return lines;
}

std::string join_parent_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += i + 1 == names.size() ? " and " : ", ";
    out += names[i];
  }
  return out;
}

std::string render_topic_text(const Topic& topic, const MarkupTree& short_tree, const MarkupTree& long_tree,
                              const TextRenderConfig& cfg) {
  std::string out = topic.name.qualified() + " -- " + topic.origin + "\n";
  if (!topic.parents.empty()) {
    std::vector<std::string> names;
    for (const SourceSymbol& p : topic.parents) names.push_back(p.printed(topic.name.package));
    out += "Parents: " + join_parent_names(names) + ".\n";
  }

  TextRenderer renderer(cfg);
  std::vector<Block> blocks;
  for (Block& b : renderer.blocks(short_tree.children, cfg.indent)) {
    b.heading = false;
    blocks.push_back(std::move(b));
  }
  for (Block& b : renderer.blocks(long_tree.children, cfg.indent)) blocks.push_back(std::move(b));

  for (const Block& b : blocks) {
    out += "\n";
    if (b.heading) out += "\n";
    for (const std::string& line : b.lines) {
      std::string_view trimmed = line;
      while (!trimmed.empty() && trimmed.back() == ' ') trimmed.remove_suffix(1);
      out += trimmed;
      out += "\n";
    }
  }
  return out;
}

}  // namespace sexdoc
