#include "doc_templates.hpp"

namespace sexdoc::templates {

namespace {

std::string entry_list(const std::vector<EntryText>& entries) {
  std::string out = "<dl>\n";
  for (const EntryText& e : entries) {
    out += "<dt><tt>" + e.name + "</tt>";
    if (!e.type.empty()) out += " : " + e.type;
    out += "</dt>\n";
    if (!e.doc.empty()) out += "<dd>" + e.doc + "</dd>\n";
  }
  out += "</dl>\n";
  return out;
}

}  // namespace

std::string definitions_heading() { return "<h3>Definitions and Theorems</h3>\n"; }

std::string def_line(const std::string& printed_name) { return "@(def " + printed_name + ")\n"; }

std::string signature_block(const std::vector<EntryText>& formals, const std::vector<EntryText>& returns) {
  std::string out = "<h5>Signature</h5>\n" + entry_list(formals);
  if (!returns.empty()) out += "<h5>Returns</h5>\n" + entry_list(returns);
  return out;
}

std::string aggregate_intro(const std::string& name, const std::vector<EntryText>& fields) {
  std::string out = "<p>This is a product type introduced by @(tsee defaggregate).</p>\n";
  out += "<h5>Fields</h5>\n";
  if (fields.empty()) {
    out += "<p>The <tt>" + name + "</tt> structure has no fields.</p>\n";
  } else {
    out += entry_list(fields);
  }
  return out;
}

std::string constructor_short(const std::string& recognizer) {
  return "Construct a @(tsee " + recognizer + ") structure.";
}

std::string constructor_long(const std::string& constructor, const std::vector<EntryText>& fields) {
  std::string out = "<h5>Syntax</h5>\n@({\n(" + constructor;
  const std::string pad(constructor.size() + 2, ' ');
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += "\n" + pad;
    else out += " ";
    out += ":" + fields[i].name + " ...";
  }
  out += ")\n})\n";
  return out;
}

std::string accessor_short(const std::string& field, const std::string& doc) {
  std::string out = "Access the <tt>" + field + "</tt> field.";
  if (!doc.empty()) out += " " + doc;
  return out;
}

std::string accessor_long(const std::string& accessor, const std::string& recognizer, const EntryText& field) {
  std::string out = "<h5>Signature</h5>\n@({\n(" + accessor + " x)\n})\n";
  out += "<p>Reads the <tt>" + field.name + "</tt> field of a @(tsee " + recognizer + ")";
  if (!field.type.empty()) out += "; the result satisfies " + field.type;
  out += ".</p>\n";
  return out;
}

}  // namespace sexdoc::templates
