#include "sexdoc/markup.hpp"

#include <algorithm>
#include <array>

namespace sexdoc {

const std::string* MarkupElement::attribute(std::string_view name) const {
  for (const auto& [key, value] : attributes) {
    if (key == name) return &value;
  }
  return nullptr;
}

bool operator==(const MarkupElement& a, const MarkupElement& b) {
  return a.tag == b.tag && a.attributes == b.attributes && a.children == b.children;
}

bool operator==(const MarkupNode& a, const MarkupNode& b) { return a.value == b.value; }

MarkupError::MarkupError(std::size_t offset, const std::string& message)
    : Error("markup error at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

namespace {

constexpr std::array<std::string_view, 31> known_tags = {
    "p",  "b",  "i",  "u",  "em", "tt",  "code", "sf", "h1", "h2", "h3",
    "h4", "h5", "ul", "ol", "li", "dl",  "dt",   "dd", "blockquote", "br", "img",
    "icon", "a", "see", "srclink", "box", "table", "tr", "th", "td"};

bool is_void_tag(std::string_view tag) { return tag == "br" || tag == "img" || tag == "icon"; }

std::string_view required_attribute(std::string_view tag) {
  if (tag == "a") return "href";
  if (tag == "see") return "topic";
  if (tag == "img" || tag == "icon") return "src";
  return {};
}

bool is_block_tag(std::string_view tag) {
  static constexpr std::array<std::string_view, 19> blocks = {
      "p", "h1", "h2", "h3", "h4", "h5", "ul", "ol", "li", "dl", "dt",
      "dd", "blockquote", "br", "box", "table", "tr", "th", "td"};
  return std::find(blocks.begin(), blocks.end(), tag) != blocks.end();
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class MarkupParser {
 public:
  explicit MarkupParser(std::string_view text) : text_(text) {}

  MarkupTree parse() {
    MarkupTree tree;
    std::vector<Open> stack;
    std::string pending_text;
    auto children = [&]() -> std::vector<MarkupNode>& {
      return stack.empty() ? tree.children : stack.back().element.children;
    };
    auto flush_text = [&] {
      if (!pending_text.empty()) {
        children().push_back(MarkupNode{std::move(pending_text)});
        pending_text.clear();
      }
    };

    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '&') {
        pending_text += read_entity();
        continue;
      }
      if (c == '/' && peek(1) == '>') {
        throw MarkupError(pos_, "stray '/>' outside a tag");
      }
      if (c != '<') {
        pending_text.push_back(c);
        ++pos_;
        continue;
      }
      flush_text();
      const std::size_t tag_start = pos_;
      if (peek(1) == '/') {
        pos_ += 2;
        const std::string name = read_name();
        skip_space();
        expect('>', "'>' to end closing tag");
        if (stack.empty()) {
          throw MarkupError(tag_start, "closing tag </" + name + "> has no matching opening tag");
        }
        if (stack.back().element.tag != name) {
          throw MarkupError(tag_start, "closing tag </" + name + "> at offset " + std::to_string(tag_start) +
                                           " does not match <" + stack.back().element.tag +
                                           "> opened at offset " + std::to_string(stack.back().offset));
        }
        MarkupElement done = std::move(stack.back().element);
        stack.pop_back();
        children().push_back(MarkupNode{std::move(done)});
        continue;
      }
      if (peek(1) == '!' || peek(1) == '?') {
        throw MarkupError(tag_start, "comments, declarations and processing instructions are not supported");
      }
      ++pos_;
      MarkupElement element;
      element.tag = read_name();
      if (!is_known_tag(element.tag)) {
        throw MarkupError(tag_start, "unknown tag <" + element.tag + ">");
      }
      bool self_closing = false;
      while (true) {
        const bool had_space = skip_space();
        if (pos_ >= text_.size()) throw MarkupError(tag_start, "unterminated tag <" + element.tag + ">");
        if (text_[pos_] == '>') {
          ++pos_;
          break;
        }
        if (text_[pos_] == '/') {
          ++pos_;
          expect('>', "'>' after '/' in self-closing tag");
          self_closing = true;
          break;
        }
        if (!had_space) throw MarkupError(pos_, "malformed attribute in <" + element.tag + ">");
        read_attribute(element);
      }
      const std::string_view required = required_attribute(element.tag);
      if (!required.empty() && element.attribute(required) == nullptr) {
        throw MarkupError(tag_start, "malformed attribute: <" + element.tag + "> requires " + std::string(required));
      }
      if (self_closing) {
        children().push_back(MarkupNode{std::move(element)});
      } else {
        stack.push_back(Open{std::move(element), tag_start});
      }
    }
    flush_text();
    if (!stack.empty()) {
      throw MarkupError(stack.back().offset, "unclosed tag <" + stack.back().element.tag + "> opened at offset " +
                                                 std::to_string(stack.back().offset));
    }
    return tree;
  }

 private:
  struct Open {
    MarkupElement element;
    std::size_t offset;
  };

  char peek(std::size_t ahead) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

  bool skip_space() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
    return pos_ != start;
  }

  void expect(char c, const char* what) {
    if (pos_ >= text_.size() || text_[pos_] != c) throw MarkupError(pos_, std::string("expected ") + what);
    ++pos_;
  }

  std::string read_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           ((text_[pos_] >= 'a' && text_[pos_] <= 'z') || (text_[pos_] >= '0' && text_[pos_] <= '9') ||
            (text_[pos_] >= 'A' && text_[pos_] <= 'Z') || text_[pos_] == '-' || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) throw MarkupError(start, "expected a tag or attribute name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void read_attribute(MarkupElement& element) {
    const std::size_t start = pos_;
    const std::string name = read_name();
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '=') {
      throw MarkupError(start, "malformed attribute '" + name + "': expected '='");
    }
    ++pos_;
    skip_space();
    if (pos_ >= text_.size() || (text_[pos_] != '\'' && text_[pos_] != '"')) {
      throw MarkupError(pos_, "malformed attribute '" + name + "': value must be quoted");
    }
    const char quote = text_[pos_++];
    std::string value;
    while (true) {
      if (pos_ >= text_.size()) throw MarkupError(start, "malformed attribute '" + name + "': unterminated value");
      const char c = text_[pos_];
      if (c == quote) {
        ++pos_;
        break;
      }
      if (c == '<') throw MarkupError(pos_, "malformed attribute '" + name + "': raw '<' in value");
      if (c == '&') {
        value += read_entity();
      } else {
        value.push_back(c);
        ++pos_;
      }
    }
    if (!is_allowed_attribute(element.tag, name)) {
      throw MarkupError(start, "malformed attribute: <" + element.tag + "> does not take '" + name + "'");
    }
    if (element.attribute(name) != nullptr) {
      throw MarkupError(start, "malformed attribute: duplicate '" + name + "' in <" + element.tag + ">");
    }
    element.attributes.emplace_back(name, std::move(value));
  }

  std::string read_entity() {
    const std::size_t start = pos_;
    const std::size_t semi = text_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) {
      throw MarkupError(start, "unterminated or unknown entity");
    }
    const std::string_view name = text_.substr(pos_ + 1, semi - pos_ - 1);
    pos_ = semi + 1;
    if (name == "lt") return "<";
    if (name == "gt") return ">";
    if (name == "amp") return "&";
    if (name == "quot") return "\"";
    if (name == "apos") return "'";
    if (name == "nbsp") return "\xC2\xA0";
    if (name.size() >= 2 && name[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = name[1] == 'x' || name[1] == 'X';
      const std::string_view digits = name.substr(hex ? 2 : 1);
      bool ok = !digits.empty() && digits.size() <= 8;
      for (char d : digits) {
        int v = -1;
        if (d >= '0' && d <= '9') v = d - '0';
        else if (hex && d >= 'a' && d <= 'f') v = d - 'a' + 10;
        else if (hex && d >= 'A' && d <= 'F') v = d - 'A' + 10;
        if (v < 0) {
          ok = false;
          break;
        }
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
      }
      if (ok && cp != 0 && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF)) {
        std::string out;
        append_utf8(out, cp);
        return out;
      }
    }
    throw MarkupError(start, "unknown entity '&" + std::string(name) + ";'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void serialize_nodes(std::string& out, const std::vector<MarkupNode>& nodes) {
  for (const MarkupNode& node : nodes) {
    if (const std::string* text = node.text()) {
      out += escape_text(*text);
      continue;
    }
    const MarkupElement& e = *node.element();
    out.push_back('<');
    out += e.tag;
    for (const auto& [name, value] : e.attributes) {
      out += ' ';
      out += name;
      out += "='";
      out += escape_attribute(value);
      out += '\'';
    }
    if (e.children.empty() && is_void_tag(e.tag)) {
      out += "/>";
      continue;
    }
    out.push_back('>');
    serialize_nodes(out, e.children);
    out += "</";
    out += e.tag;
    out.push_back('>');
  }
}

void gather_text(std::string& out, const std::vector<MarkupNode>& nodes) {
  for (const MarkupNode& node : nodes) {
    if (const std::string* text = node.text()) {
      out += *text;
      continue;
    }
    const MarkupElement& e = *node.element();
    const bool block = is_block_tag(e.tag);
    if (block) out.push_back(' ');
    gather_text(out, e.children);
    if (block) out.push_back(' ');
  }
}

void escape_into(std::string& out, std::string_view text, bool attribute) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '\'':
        if (attribute) out += "&apos;";
        else out.push_back(c);
        break;
      case '@':
        if (i + 1 < text.size() && text[i + 1] == '(') out += "&#64;";
        else out.push_back(c);
        break;
      default: out.push_back(c);
    }
  }
}

}  // namespace

bool is_known_tag(std::string_view tag) {
  return !tag.empty() && std::find(known_tags.begin(), known_tags.end(), tag) != known_tags.end();
}

bool is_allowed_attribute(std::string_view tag, std::string_view attribute) {
  if (tag == "a") return attribute == "href";
  if (tag == "see") return attribute == "topic";
  if (tag == "img" || tag == "icon") return attribute == "src" || attribute == "alt";
  return false;
}

MarkupTree parse_markup(std::string_view text) { return MarkupParser(text).parse(); }

std::string serialize(const std::vector<MarkupNode>& nodes) {
  std::string out;
  serialize_nodes(out, nodes);
  return out;
}

std::string serialize(const MarkupTree& tree) { return serialize(tree.children); }

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  escape_into(out, text, false);
  return out;
}

std::string escape_attribute(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  escape_into(out, text, true);
  return out;
}

std::string extract_text(const std::vector<MarkupNode>& nodes) {
  std::string raw;
  gather_text(raw, nodes);
  std::string out;
  bool pending_space = false;
  for (char c : raw) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string extract_text(const MarkupTree& tree) { return extract_text(tree.children); }

}  // namespace sexdoc
