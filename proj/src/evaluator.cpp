#include "sexdoc/evaluator.hpp"

#include <set>

namespace sexdoc {

namespace {

class Evaluator {
 public:
  explicit Evaluator(const World& world) : world_(world) {}

  Value eval(const Form& form) {
    if (const std::int64_t* n = form.integer()) return *n;
    if (const std::string* s = form.string()) return *s;
    if (const SourceSymbol* sym = form.symbol()) return eval_symbol(*sym, form);
    const FormList& items = *form.list();
    if (items.empty()) return form;
    if (!items.front().is_symbol()) throw Error(form.span, "evaluation: operator must be a symbol");
    const std::string& op = items.front().symbol()->name;
    const std::size_t argc = items.size() - 1;

    if (op == "QUOTE") {
      arity(form, op, argc, 1);
      return items[1];
    }
    if (op == "+" || op == "*" || op == "-") {
      if (op == "-" && argc == 0) throw Error(form.span, "evaluation: - needs at least one argument");
      std::int64_t acc = op == "*" ? 1 : 0;
      for (std::size_t i = 1; i < items.size(); ++i) {
        const std::int64_t v = integer_arg(items[i]);
        bool overflow = false;
        if (op == "+") {
          overflow = __builtin_add_overflow(acc, v, &acc);
        } else if (op == "*") {
          overflow = __builtin_mul_overflow(acc, v, &acc);
        } else if (i == 1 && argc > 1) {
          acc = v;
        } else {
          overflow = __builtin_sub_overflow(acc, v, &acc);
        }
        if (overflow) throw Error(form.span, "evaluation: integer overflow in " + op);
      }
      return acc;
    }
    if (op == "LEN") {
      arity(form, op, argc, 1);
      const Value v = eval(items[1]);
      const Form* datum = std::get_if<Form>(&v);
      if (datum && datum->is_list()) return static_cast<std::int64_t>(datum->list()->size());
      if (datum && datum->is_symbol() && datum->symbol()->name == "NIL") return std::int64_t{0};
      if (const std::string* s = std::get_if<std::string>(&v)) return static_cast<std::int64_t>(s->size());
      throw Error(items[1].span, "evaluation: len needs a list");
    }
    if (op == "STRING-APPEND") {
      std::string out;
      for (std::size_t i = 1; i < items.size(); ++i) {
        const Value v = eval(items[i]);
        const std::string* s = std::get_if<std::string>(&v);
        if (!s) throw Error(items[i].span, "evaluation: string-append needs strings");
        out += *s;
      }
      return out;
    }
    throw Error(form.span, "evaluation: unsupported operator " + items.front().symbol()->qualified());
  }

 private:
  static void arity(const Form& form, const std::string& op, std::size_t got, std::size_t want) {
    if (got != want) {
      throw Error(form.span, "evaluation: " + op + " takes " + std::to_string(want) + " argument(s), got " +
                                 std::to_string(got));
    }
  }

  std::int64_t integer_arg(const Form& form) {
    const Value v = eval(form);
    if (const std::int64_t* n = std::get_if<std::int64_t>(&v)) return *n;
    throw Error(form.span, "evaluation: expected an integer");
  }

  Value eval_symbol(const SourceSymbol& sym, const Form& form) {
    if (sym.is_keyword() || sym.name == "T" || sym.name == "NIL") return form;
    const Definition* def = lookup_definition(world_, sym);
    if (!def) {
      for (const auto& [name, candidate] : world_.definitions) {
        if (name.name != sym.name || candidate.kind != DefinitionKind::constant) continue;
        if (def) {
          def = nullptr;
          break;
        }
        def = &candidate;
      }
    }
    if (!def || def->kind != DefinitionKind::constant) {
      throw Error(form.span, "evaluation: unbound constant " + sym.qualified());
    }
    const FormList& items = *def->form.list();
    if (items.size() < 3) throw Error(def->form.span, "evaluation: defconst without a value");
    if (!active_.insert(def->name).second) {
      throw Error(def->form.span, "evaluation: constant " + def->name.qualified() + " refers to itself");
    }
    Value result = eval(items[2]);
    active_.erase(def->name);
    return result;
  }

  const World& world_;
  std::set<SourceSymbol> active_;
};

}  // namespace

Value evaluate(const Form& form, const World& world) { return Evaluator(world).eval(form); }

std::string print_value(const Value& value, std::string_view package) {
  if (const std::int64_t* n = std::get_if<std::int64_t>(&value)) return std::to_string(*n);
  if (const std::string* s = std::get_if<std::string>(&value)) return *s;
  return print_form(std::get<Form>(value), package, LetterCase::lower);
}

}  // namespace sexdoc
