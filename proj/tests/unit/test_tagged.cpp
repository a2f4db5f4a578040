#include <doctest.h>

#include <random>

#include "vstar/error.hpp"
#include "vstar/tagged.hpp"
#include "vstar/text.hpp"

using namespace vstar;

namespace {

// Independent well-matchedness check: a plain stack of pair indices.
bool stack_well_matched(const TaggedString& s) {
  std::vector<std::uint16_t> stack;
  for (const auto& sym : s) {
    if (sym.is_call()) {
      stack.push_back(sym.pair);
    } else if (sym.is_return()) {
      if (stack.empty() || stack.back() != sym.pair) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

}  // namespace

TEST_SUITE("tagged") {
  TEST_CASE("applying {(a,b)} to agcdhbcd brackets a and b only") {
    Tagging t({{'a', 'b'}});
    auto s = apply_tagging(t, "agcdhbcd");
    REQUIRE(s.size() == 8);
    CHECK(s[0].is_call());
    CHECK(s[0].ch == 'a');
    CHECK(s[5].is_return());
    CHECK(s[5].ch == 'b');
    for (std::size_t i : {1, 2, 3, 4, 6, 7}) CHECK(s[i].is_plain());
    CHECK(to_display(s) == "<agcdhb>cd");
  }

  TEST_CASE("empty tagging leaves every symbol plain; empty input stays empty") {
    for (const auto& sym : apply_tagging(Tagging{}, "abc")) CHECK(sym.is_plain());
    CHECK(apply_tagging(Tagging({{'a', 'b'}}), "").empty());
  }

  TEST_CASE("well-matchedness of the fig1 seed under two taggings") {
    CHECK(is_well_matched(apply_tagging(Tagging({{'a', 'b'}}), "agcdcdhbcd")));
    CHECK_FALSE(is_well_matched(apply_tagging(Tagging({{'a', 'h'}, {'g', 'b'}}), "agcdcdhbcd")));
    CHECK(is_well_matched({}));
  }

  TEST_CASE("unmatched profiles") {
    Tagging t({{'a', 'b'}});
    auto open = unmatched_profile(apply_tagging(t, "ag"));
    CHECK(open.pending_calls == std::vector<std::uint16_t>{0});
    CHECK(open.pending_returns.empty());
    auto close = unmatched_profile(apply_tagging(t, "hb"));
    CHECK(close.pending_calls.empty());
    CHECK(close.pending_returns == std::vector<std::uint16_t>{0});
    CHECK(unmatched_profile(apply_tagging(t, "agcdhbcd")).empty());
  }

  TEST_CASE("a return closing the wrong pair is unmatched") {
    Tagging t({{'a', 'b'}, {'g', 'h'}});
    auto p = unmatched_profile(apply_tagging(t, "ab" "gb"));
    CHECK(p.pending_calls == std::vector<std::uint16_t>{1});
    CHECK(p.pending_returns == std::vector<std::uint16_t>{0});
  }

  TEST_CASE("unique pairing is enforced") {
    Tagging t({{'a', 'b'}});
    CHECK_THROWS_AS(t.with('a', 'c'), DomainError);
    CHECK_THROWS_AS(t.with('c', 'a'), DomainError);
    CHECK_THROWS_AS(Tagging({{'a', 'a'}}), DomainError);
    CHECK(t.with('g', 'h').size() == 2);
  }

  TEST_CASE("characters outside the alphabet are rejected") {
    Alphabet sigma("abc");
    CHECK_THROWS_AS(apply_tagging(sigma, Tagging({{'a', 'b'}}), "abz"), DomainError);
    CHECK_THROWS_AS(Tagging({{'a', 'z'}}).validate_against(sigma), DomainError);
  }

  TEST_CASE("tagging and tagged alphabet JSON round-trip") {
    Tagging t({{'a', 'b'}, {'g', 'h'}});
    CHECK(tagging_from_json(to_json(t)) == t);
    auto ta = make_tagged_alphabet(Alphabet("abcdgh"), t);
    CHECK(ta.plain == "cd");
    CHECK(ta.symbol_count() == 6);
    CHECK(tagged_alphabet_from_json(to_json(ta)) == ta);
  }

  TEST_CASE("randomized: well-matched iff empty unmatched profile, matching a stack check") {
    std::mt19937_64 rng(11);
    Tagging t({{'a', 'b'}, {'g', 'h'}});
    std::uniform_int_distribution<int> len(0, 12), pick(0, 5);
    const std::string chars = "abcdgh";
    for (int n = 0; n < 500; ++n) {
      std::string s(static_cast<std::size_t>(len(rng)), ' ');
      for (auto& c : s) c = chars[static_cast<std::size_t>(pick(rng))];
      auto w = apply_tagging(t, s);
      CHECK(is_well_matched(w) == stack_well_matched(w));
      CHECK(is_well_matched(w) == unmatched_profile(w).empty());
      CHECK(untag(w) == s);
    }
  }
}

TEST_SUITE("text") {
  TEST_CASE("byte escaping round-trips every byte value") {
    std::string all;
    for (int b = 0; b < 256; ++b) all.push_back(static_cast<char>(b));
    auto esc = escape_bytes(all);
    CHECK(esc.find('\n') == std::string::npos);
    CHECK(unescape_bytes(esc) == all);
    CHECK(escape_bytes("a\\b\n\t") == "a\\\\b\\n\\t");
  }

  TEST_CASE("seed lines") {
    CHECK(parse_seed_lines("ab\ncd\n") == std::vector<std::string>{"ab", "cd"});
    CHECK(parse_seed_lines("ab\n\ncd") == std::vector<std::string>{"ab", "", "cd"});
    CHECK(parse_seed_lines("x\\ny\n") == std::vector<std::string>{"x\ny"});
  }

  TEST_CASE("shell word splitting") {
    CHECK(split_shell_words("sh -c 'exit 0'") == std::vector<std::string>{"sh", "-c", "exit 0"});
    CHECK(split_shell_words("a \"b c\" d\\ e") == std::vector<std::string>{"a", "b c", "d e"});
  }
}
