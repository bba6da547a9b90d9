#include "sexdoc/config.hpp"

#include <fstream>
#include <sstream>

#include "sexdoc/reader.hpp"

namespace sexdoc {

namespace {

// Bare symbols in the config are read into this package so that a root
// written without a package can later take the configured :package.
constexpr std::string_view unqualified_package = "SEXDOC-CONFIG";

bool truthy(const Form& value) {
  return !(value.is_symbol() && value.symbol()->name == "NIL") && !(value.is_list() && value.list()->empty());
}

std::string string_value(const Form& value, const std::string& option) {
  if (const std::string* s = value.string()) return *s;
  throw Error(value.span, "config option " + option + " needs a string");
}

}  // namespace

SourceSymbol ProjectConfig::root_symbol() const { return root.value_or(make_symbol(package, "TOP")); }

ProjectConfig parse_config(std::string_view text, const std::filesystem::path& base_dir, std::string_view file) {
  const std::vector<Form> forms = read_forms(text, unqualified_package, file);
  if (forms.size() != 1 || !forms.front().is_list()) {
    throw Error(SourceSpan{std::string(file), 1, 1}, "config must be a single list of :option value pairs");
  }
  const FormList& items = *forms.front().list();
  if (items.size() % 2 != 0) throw Error(forms.front().span, "config options must come in :option value pairs");

  ProjectConfig cfg;
  cfg.base_dir = base_dir;
  std::optional<Form> root;
  for (std::size_t i = 0; i < items.size(); i += 2) {
    if (!items[i].is_keyword()) throw Error(items[i].span, "expected a config option keyword");
    const std::string option = ":" + downcase(items[i].symbol()->name);
    const Form& value = items[i + 1];
    if (option == ":sources") {
      if (value.is_string()) {
        cfg.sources.push_back(*value.string());
      } else if (value.is_list()) {
        for (const Form& s : *value.list()) cfg.sources.push_back(string_value(s, option));
      } else {
        throw Error(value.span, "config option :sources needs a list of strings");
      }
    } else if (option == ":package") {
      cfg.package = upcase(string_value(value, option));
      if (cfg.package.empty()) throw Error(value.span, "config option :package may not be empty");
    } else if (option == ":root") {
      root = value;
    } else if (option == ":title") {
      cfg.title = string_value(value, option);
    } else if (option == ":out") {
      cfg.out = string_value(value, option);
    } else if (option == ":force") {
      cfg.force = truthy(value);
    } else if (option == ":strict-lint") {
      cfg.strict_lint = truthy(value);
    } else if (option == ":archive") {
      cfg.archive = truthy(value);
    } else {
      throw Error(items[i].span, "unknown config option " + option);
    }
  }
  if (cfg.sources.empty()) throw Error(forms.front().span, "config needs at least one :sources pattern");
  if (root) {
    std::optional<SourceSymbol> sym;
    if (const SourceSymbol* s = root->symbol()) sym = *s;
    else if (const std::string* s = root->string()) sym = parse_symbol_token(*s, unqualified_package);
    if (!sym || sym->is_keyword()) throw Error(root->span, "config option :root needs a symbol");
    if (sym->package == unqualified_package) sym->package = cfg.package;
    cfg.root = *sym;
  }
  return cfg;
}

ProjectConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read config file '" + file.generic_string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::filesystem::path base = file.parent_path();
  if (base.empty()) base = ".";
  ProjectConfig cfg = parse_config(buffer.str(), base, file.generic_string());
  if (cfg.out.is_relative()) cfg.out = base / cfg.out;
  return cfg;
}

}  // namespace sexdoc
