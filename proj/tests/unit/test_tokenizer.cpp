#include <doctest.h>

#include "support/literal_dfa.hpp"
#include "support/reference.hpp"
#include "vstar/interpretation.hpp"
#include "vstar/nesting.hpp"
#include "vstar/oracle.hpp"
#include "vstar/tokenizer.hpp"
#include "vstar/vpg.hpp"
#include "vstar/text.hpp"

using namespace vstar;
using testsupport::literal_dfa;

namespace {

const std::string kJsonChars = "\"{}:truefalsn0123456789,[] ";
const std::string kXmlChars = "<>/p";

PartialTokenizer brace_tokenizer() {
  PartialTokenizer d;
  d.pairs.push_back({literal_dfa("{", kJsonChars), literal_dfa("}", kJsonChars)});
  return d;
}

PartialTokenizer p_tokenizer() {
  PartialTokenizer d;
  d.pairs.push_back({literal_dfa("<p>", kXmlChars), literal_dfa("</p>", kXmlChars)});
  return d;
}

}  // namespace

TEST_SUITE("tokenizer") {
  TEST_CASE("a quoted brace is skipped because it is repeatable") {
    FunctionOracle json(ref::json);
    const std::string s = R"({"{":true})";
    REQUIRE(s.size() == 10);
    auto m = tokenize(brace_tokenizer(), s, json);
    REQUIRE(m.size() == 2);
    CHECK(m[0] == TokenMatch{0, TokenSide::Call, 1, 1});
    CHECK(m[1] == TokenMatch{0, TokenSide::Return, 10, 10});
  }

  TEST_CASE("repeatability of the inner and outer brace") {
    FunctionOracle json(ref::json);
    const std::string s = R"({"{":true})";
    CHECK(is_k_repeatable(json, s, 3, 3, 2));
    CHECK_FALSE(is_k_repeatable(json, s, 1, 1, 2));
    CHECK(is_k_repeatable(json, s, 1, 1, 1) == json.query(s));
  }

  TEST_CASE("toy XML seed tokenizes into four tags and brackets like the worked example") {
    FunctionOracle xml(ref::toy_xml);
    const std::string seed = "<p><p>p</p></p>";
    auto m = tokenize(p_tokenizer(), seed, xml);
    REQUIRE(m.size() == 4);
    CHECK(m[0] == TokenMatch{0, TokenSide::Call, 1, 3});
    CHECK(m[1] == TokenMatch{0, TokenSide::Call, 4, 6});
    CHECK(m[2] == TokenMatch{0, TokenSide::Return, 8, 11});
    CHECK(m[3] == TokenMatch{0, TokenSide::Return, 12, 15});
    auto image = conv(seed, m);
    CHECK(to_display(image) == "<#0<p><#0<p>p</p>#0></p>#0>");
    CHECK(is_well_matched(image));
    CHECK(erase_brackets(image) == seed);
  }

  TEST_CASE("empty tokenizer and strings without tokens") {
    FunctionOracle xml(ref::toy_xml);
    CHECK(tokenize(PartialTokenizer{}, "<p>p</p>", xml).empty());
    auto image = conv("pp", tokenize(p_tokenizer(), "pp", xml));
    CHECK(image.size() == 2);
    for (const auto& s : image) CHECK(s.is_plain());
  }

  TEST_CASE("tokenizer JSON round-trip keeps k_rep") {
    PartialTokenizer d = p_tokenizer();
    d.k_rep = 3;
    auto back = PartialTokenizer::from_json(d.to_json());
    CHECK(back.k_rep == 3);
    CHECK(back.to_json() == d.to_json());
  }

  TEST_CASE("token interpretation images and canonical words") {
    FunctionOracle xml(ref::toy_xml);
    TokenizerInterpretation interp(Alphabet(kXmlChars), p_tokenizer(), xml);
    auto img = interp.image("<p>p</p>");
    REQUIRE(img);
    CHECK(interp.is_canonical(*img));
    CHECK_FALSE(interp.image("<p>q</p>").has_value());
    // A bracket in front of a character that starts no token.
    TaggedString odd = *img;
    odd.erase(odd.begin());
    odd.insert(odd.begin() + 1, img->front());
    CHECK_FALSE(interp.is_canonical(odd));
    CHECK(interp.alphabet().pair_count() == 1);
  }
}
