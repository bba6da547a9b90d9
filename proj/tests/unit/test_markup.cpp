#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sexdoc/markup.hpp"
#include "test_support.hpp"

using namespace sexdoc;

namespace {

MarkupNode text(std::string s) { return MarkupNode{std::move(s)}; }

MarkupNode element(std::string tag, std::vector<MarkupNode> children,
                   std::vector<std::pair<std::string, std::string>> attributes = {}) {
  return MarkupNode{MarkupElement{std::move(tag), std::move(attributes), std::move(children)}};
}

std::size_t error_offset(std::string_view s) {
  try {
    parse_markup(s);
  } catch (const MarkupError& e) {
    return e.offset();
  }
  return std::string::npos;
}

}  // namespace

TEST_CASE("parse-markup: paragraph with bold") {
  const MarkupTree tree = parse_markup("<p><b>Getopt</b> is a tool</p>");
  const MarkupTree expected{{element("p", {element("b", {text("Getopt")}), text(" is a tool")})}};
  CHECK(tree == expected);
  CHECK(serialize(tree) == "<p><b>Getopt</b> is a tool</p>");
  CHECK(parse_markup("").children.empty());
}

TEST_CASE("parse-markup: entities, attributes and short forms") {
  const MarkupTree tree = parse_markup("a&lt;b&gt;&amp;&quot;&apos;&nbsp;&#64;&#x41;<br/><a href=\"u'v\">t</a><p/>");
  REQUIRE(tree.children.size() == 4);
  CHECK(*tree.children[0].text() == "a<b>&\"'\xC2\xA0@A");
  CHECK(tree.children[1].element()->tag == "br");
  CHECK(*tree.children[2].element()->attribute("href") == "u'v");
  CHECK(serialize(tree) == "a&lt;b&gt;&amp;\"'\xC2\xA0@A<br/><a href='u&apos;v'>t</a><p></p>");
}

TEST_CASE("serialize: see element and escaping") {
  const MarkupTree see{{element("see", {text("car")}, {{"topic", "X"}})}};
  CHECK(serialize(see) == "<see topic='X'>car</see>");
  CHECK(serialize(MarkupTree{{text("a<b")}}) == "a&lt;b");
  CHECK(serialize(MarkupTree{{text("@(see x)")}}) == "&#64;(see x)");
}

TEST_CASE("parse-markup: errors with offsets") {
  try {
    parse_markup("<p>a<em>b</p></em>");
    FAIL("accepted");
  } catch (const MarkupError& e) {
    const std::string message = e.what();
    CHECK(e.offset() == 9);
    CHECK(message.find("</p>") != std::string::npos);
    CHECK(message.find("<em>") != std::string::npos);
    CHECK(message.find("offset 4") != std::string::npos);
    CHECK(message.find("offset 9") != std::string::npos);
  }
  CHECK(error_offset("<p>") == 0);
  CHECK(error_offset("ok</p>") == 2);
  CHECK(error_offset("<blink>x</blink>") == 0);
  CHECK(error_offset("x &bogus; y") == 2);
  CHECK(error_offset("x & y") == 2);
  CHECK(error_offset("<a href=x>t</a>") == 8);
  CHECK(error_offset("<a>t</a>") == 0);
  CHECK(error_offset("<p class='x'>t</p>") == 3);
  CHECK(error_offset("<see topic='a' topic='b'>t</see>") == 15);
  CHECK(error_offset("<!-- c -->") == 0);
  CHECK(error_offset("&#0;") == 0);
}

TEST_CASE("extract-text") {
  CHECK(extract_text(parse_markup("<p>A library for processing command-line options.</p>")) ==
        "A library for processing command-line options.");
  CHECK(extract_text(parse_markup("")) == "");
  CHECK(extract_text(parse_markup("<p>a\n\n  b</p>")) == "a b");
  CHECK(extract_text(parse_markup("<p>x</p><p>y</p><code>(car  x)</code>")) == "x y (car x)");
  CHECK(extract_text(parse_markup("<b>Get</b>opt")) == "Getopt");
}

TEST_CASE("round trip over 1000 random trees") {
  testing::Rng rng(314159);
  for (int i = 0; i < 1000; ++i) {
    const MarkupTree tree = testing::random_tree(rng);
    const std::string s = serialize(tree);
    REQUIRE_MESSAGE(parse_markup(s) == tree, s);
    CHECK(serialize(parse_markup(s)) == s);
  }
}

TEST_CASE("mutating one bracket or slash of a serialization is rejected") {
  testing::Rng rng(2718);
  int mutations = 0;
  for (int i = 0; i < 300; ++i) {
    const MarkupTree tree = testing::random_tree(rng);
    const std::string s = serialize(tree);
    for (std::size_t pos = 0; pos < s.size(); ++pos) {
      const char c = s[pos];
      if (c != '<' && c != '>' && c != '/') continue;
      // A slash inside an attribute value is data, not structure.
      const std::size_t open = s.rfind('<', pos);
      const std::size_t quote = s.find('\'', open == std::string::npos ? 0 : open);
      if (c == '/' && quote != std::string::npos && quote < pos && s.find('\'', quote + 1) > pos) continue;
      for (const char* replacement : {"", "x"}) {
        std::string mutated = s;
        mutated.replace(pos, 1, replacement);
        ++mutations;
        REQUIRE_THROWS_AS_MESSAGE(parse_markup(mutated), MarkupError, mutated);
      }
    }
  }
  CHECK(mutations > 1000);
}

TEST_CASE("extract-text output holds no markup for text without markup characters") {
  testing::Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    MarkupTree tree = testing::random_tree(rng);
    std::string out = extract_text(tree);
    // random_text may itself contain < > &; those come back decoded, so check
    // only that no entity or tag survives.
    CHECK(out.find("&lt;") == std::string::npos);
    CHECK(out.find("&amp;") == std::string::npos);
    CHECK(out.find("<p>") == std::string::npos);
    CHECK(out.find("  ") == std::string::npos);
  }
  const MarkupTree plain = parse_markup("<p>alpha <b>beta</b></p><ul><li>gamma</li></ul><see topic='K'>delta</see>");
  const std::string out = extract_text(plain);
  CHECK(out == "alpha beta gamma delta");
  CHECK(out.find_first_of("<>&") == std::string::npos);
}
