#include "sexdoc/reader.hpp"

#include <charconv>

namespace sexdoc {

Form make_symbol_form(SourceSymbol s) { return Form{std::move(s), {}}; }
Form make_string_form(std::string s) { return Form{std::move(s), {}}; }
Form make_integer_form(std::int64_t v) { return Form{v, {}}; }
Form make_list_form(FormList items) { return Form{std::move(items), {}}; }

std::optional<std::string_view> Form::head_name() const {
  const FormList* items = list();
  if (items == nullptr || items->empty()) return std::nullopt;
  const SourceSymbol* head = items->front().symbol();
  if (head == nullptr) return std::nullopt;
  return std::string_view(head->name);
}

bool is_symbol_constituent(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x80) return true;
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) return true;
  switch (c) {
    case '<': case '>': case '-': case '+': case '*': case '/': case '=': case '?':
    case '!': case '.': case '_': case '&': case '%': case '$': case '^': case '~':
    case '@':
      return true;
    default:
      return false;
  }
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool looks_like_integer(std::string_view token) {
  std::size_t i = 0;
  if (!token.empty() && (token[0] == '+' || token[0] == '-')) i = 1;
  if (i >= token.size()) return false;
  for (; i < token.size(); ++i) {
    if (token[i] < '0' || token[i] > '9') return false;
  }
  return true;
}

struct TokenMeaning {
  std::optional<std::int64_t> integer;
  std::optional<SourceSymbol> symbol;
  std::string problem;
};

TokenMeaning classify_token(std::string_view token, std::string_view package) {
  TokenMeaning m;
  if (looks_like_integer(token)) {
    std::string_view digits = token;
    if (!digits.empty() && digits[0] == '+') digits.remove_prefix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      m.problem = "integer out of range: " + std::string(token);
    } else {
      m.integer = value;
    }
    return m;
  }
  if (token.front() == ':') {
    std::string_view rest = token.substr(1);
    if (rest.empty() || rest.find(':') != std::string_view::npos) {
      m.problem = "malformed keyword '" + std::string(token) + "'";
      return m;
    }
    m.symbol = SourceSymbol{std::string(keyword_package), upcase(rest)};
    return m;
  }
  const auto sep = token.find("::");
  if (sep != std::string_view::npos) {
    std::string_view pkg = token.substr(0, sep);
    std::string_view name = token.substr(sep + 2);
    if (pkg.empty() || name.empty()) {
      m.problem = "empty package or name around '::' in '" + std::string(token) + "'";
      return m;
    }
    if (pkg.find(':') != std::string_view::npos || name.find(':') != std::string_view::npos) {
      m.problem = "too many package markers in '" + std::string(token) + "'";
      return m;
    }
    m.symbol = SourceSymbol{upcase(pkg), upcase(name)};
    return m;
  }
  if (token.find(':') != std::string_view::npos) {
    m.problem = "single-colon package qualifier is not supported: '" + std::string(token) + "'";
    return m;
  }
  m.symbol = SourceSymbol{upcase(package), upcase(token)};
  return m;
}

class Reader {
 public:
  Reader(std::string_view text, std::string_view file) : text_(text), file_(file) {}

  std::vector<Form> read_all(std::string package) {
    package_ = std::move(package);
    std::vector<Form> forms;
    while (true) {
      skip_atmosphere();
      if (at_end()) break;
      if (peek() == ')') fail(here(), "unbalanced parenthesis: unexpected ')'");
      Form form = read_form();
      switch_package_if_needed(form);
      forms.push_back(std::move(form));
    }
    return forms;
  }

 private:
  SourceSpan here() const { return SourceSpan{std::string(file_), line_, column_}; }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const SourceSpan& where, const std::string& message) const {
    throw Error(where, message);
  }

  void skip_atmosphere() {
    while (!at_end()) {
      const char c = peek();
      if (is_space(c)) {
        advance();
      } else if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '#' && peek(1) == '|') {
        skip_block_comment();
      } else {
        return;
      }
    }
  }

  void skip_block_comment() {
    const SourceSpan start = here();
    int depth = 0;
    while (!at_end()) {
      if (peek() == '#' && peek(1) == '|') {
        advance();
        advance();
        ++depth;
      } else if (peek() == '|' && peek(1) == '#') {
        advance();
        advance();
        if (--depth == 0) return;
      } else {
        advance();
      }
    }
    fail(start, "unterminated #| block comment");
  }

  Form read_form() {
    const SourceSpan start = here();
    const char c = peek();
    if (c == '(') return read_list(start);
    if (c == '"') return read_string(start);
    if (c == '\'') {
      advance();
      skip_atmosphere();
      if (at_end() || peek() == ')') fail(start, "quote is not followed by a form");
      Form quoted = read_form();
      FormList items;
      items.push_back(Form{SourceSymbol{std::string(quote_package), "QUOTE"}, start});
      items.push_back(std::move(quoted));
      return Form{std::move(items), start};
    }
    if (is_symbol_constituent(c) || c == ':') return read_token(start);
    fail(start, std::string("unsupported character '") + c + "'");
  }

  Form read_list(const SourceSpan& start) {
    advance();
    FormList items;
    while (true) {
      skip_atmosphere();
      if (at_end()) {
        fail(start, "unbalanced parenthesis: list opened here is never closed");
      }
      if (peek() == ')') {
        advance();
        return Form{std::move(items), start};
      }
      items.push_back(read_form());
    }
  }

  Form read_string(const SourceSpan& start) {
    advance();
    std::string out;
    while (true) {
      if (at_end()) fail(start, "unterminated string");
      const char c = peek();
      if (c == '"') {
        advance();
        return Form{std::move(out), start};
      }
      if (c == '\\') {
        advance();
        if (at_end()) fail(start, "unterminated string");
      }
      out.push_back(peek());
      advance();
    }
  }

  Form read_token(const SourceSpan& start) {
    const std::size_t begin = pos_;
    while (!at_end() && (is_symbol_constituent(peek()) || peek() == ':')) advance();
    const std::string_view token = text_.substr(begin, pos_ - begin);
    TokenMeaning meaning = classify_token(token, package_);
    if (!meaning.problem.empty()) fail(start, meaning.problem);
    if (meaning.integer) return Form{*meaning.integer, start};
    return Form{std::move(*meaning.symbol), start};
  }

  void switch_package_if_needed(const Form& form) {
    if (form.head_name() != std::string_view("IN-PACKAGE")) return;
    const FormList& items = *form.list();
    if (items.size() != 2 || !items[1].is_string() || items[1].string()->empty()) {
      fail(form.span, "in-package expects one non-empty package name string");
    }
    package_ = upcase(*items[1].string());
  }

  std::string_view text_;
  std::string_view file_;
  std::string package_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

void print_string_literal(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
}

bool is_quote_form(const Form& form) {
  const FormList* items = form.list();
  if (items == nullptr || items->size() != 2) return false;
  const SourceSymbol* head = items->front().symbol();
  return head != nullptr && head->package == quote_package && head->name == "QUOTE";
}

void print_flat(std::string& out, const Form& form, std::string_view package, LetterCase lc) {
  if (const auto* s = form.symbol()) {
    out += print_symbol(*s, package, lc);
  } else if (const auto* str = form.string()) {
    print_string_literal(out, *str);
  } else if (const auto* i = form.integer()) {
    out += std::to_string(*i);
  } else if (is_quote_form(form)) {
    out.push_back('\'');
    print_flat(out, (*form.list())[1], package, lc);
  } else {
    out.push_back('(');
    bool first = true;
    for (const Form& child : *form.list()) {
      if (!first) out.push_back(' ');
      first = false;
      print_flat(out, child, package, lc);
    }
    out.push_back(')');
  }
}

void print_pretty(std::string& out, const Form& form, std::string_view package, std::size_t indent,
                  std::size_t width) {
  std::string flat;
  print_flat(flat, form, package, LetterCase::lower);
  const FormList* items = form.list();
  if (items == nullptr || items->empty() || is_quote_form(form) ||
      (indent + flat.size() <= width && flat.find('\n') == std::string::npos)) {
    out += flat;
    return;
  }
  const std::size_t child_indent = indent + 2;
  out.push_back('(');
  print_pretty(out, items->front(), package, indent + 1, width);
  std::size_t next = 1;
  // Keep the defined name (or any leading atom) on the head line.
  if (items->front().is_symbol() && items->size() > 1 && !(*items)[1].is_list()) {
    out.push_back(' ');
    print_flat(out, (*items)[1], package, LetterCase::lower);
    next = 2;
  }
  for (; next < items->size(); ++next) {
    out.push_back('\n');
    out.append(child_indent, ' ');
    print_pretty(out, (*items)[next], package, child_indent, width);
  }
  out.push_back(')');
}

}  // namespace

void check_utf8(std::string_view text, std::string_view file) {
  int line = 1;
  for (std::size_t i = 0; i < text.size();) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    if (c < 0x80) {
      if (c == '\n') ++line;
      ++i;
      continue;
    }
    if ((c & 0xE0) == 0xC0 && c >= 0xC2) len = 2;
    else if ((c & 0xF0) == 0xE0) len = 3;
    else if ((c & 0xF8) == 0xF0 && c <= 0xF4) len = 4;
    bool ok = len != 0 && i + len <= text.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      ok = (static_cast<unsigned char>(text[i + k]) & 0xC0) == 0x80;
    }
    if (ok && len == 3) {
      const auto c1 = static_cast<unsigned char>(text[i + 1]);
      ok = !(c == 0xE0 && c1 < 0xA0) && !(c == 0xED && c1 >= 0xA0);
    } else if (ok && len == 4) {
      const auto c1 = static_cast<unsigned char>(text[i + 1]);
      ok = !(c == 0xF0 && c1 < 0x90) && !(c == 0xF4 && c1 >= 0x90);
    }
    if (!ok) {
      throw Error(SourceSpan{std::string(file), line, 0},
                  "invalid UTF-8 at byte offset " + std::to_string(i));
    }
    i += len;
  }
}

std::vector<Form> read_forms(std::string_view text, std::string_view default_package,
                             std::string_view file) {
  if (default_package.empty()) throw Error("default package must be non-empty");
  check_utf8(text, file);
  Reader reader(text, file);
  return reader.read_all(upcase(default_package));
}

Form read_single_form(std::string_view text, std::string_view default_package,
                      std::string_view file) {
  std::vector<Form> forms = read_forms(text, default_package, file);
  if (forms.size() != 1) {
    throw Error(SourceSpan{std::string(file), 1, 1},
                "expected exactly one form, found " + std::to_string(forms.size()));
  }
  return std::move(forms.front());
}

std::optional<SourceSymbol> parse_symbol_token(std::string_view token,
                                               std::string_view current_package) {
  if (token.empty() || current_package.empty()) return std::nullopt;
  for (char c : token) {
    if (!is_symbol_constituent(c) && c != ':') return std::nullopt;
  }
  TokenMeaning meaning = classify_token(token, current_package);
  if (!meaning.problem.empty() || !meaning.symbol) return std::nullopt;
  return meaning.symbol;
}

std::string print_symbol(const SourceSymbol& symbol, std::string_view package,
                         LetterCase letter_case) {
  std::string text;
  if (symbol.is_keyword()) {
    text = ":" + symbol.name;
  } else if (symbol.package == package && !looks_like_integer(symbol.name)) {
    text = symbol.name;
  } else {
    text = symbol.package + "::" + symbol.name;
  }
  return letter_case == LetterCase::lower ? downcase(text) : text;
}

std::string print_form(const Form& form, std::string_view package, LetterCase letter_case) {
  std::string out;
  print_flat(out, form, package, letter_case);
  return out;
}

std::string pretty_print_form(const Form& form, std::string_view package, std::size_t width) {
  std::string out;
  print_pretty(out, form, package, 0, width);
  return out;
}

}  // namespace sexdoc
