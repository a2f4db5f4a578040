#include <doctest.h>

#include <random>

#include "support/dfa_support.hpp"
#include "support/reference.hpp"
#include "vstar/dfa.hpp"
#include "vstar/error.hpp"
#include "vstar/lstar.hpp"

using namespace vstar;

namespace {

LstarResult learn_language(const MemberFn& member, const std::string& alphabet, std::size_t test_len) {
  // Exhaustive teacher over all words up to test_len.
  std::vector<std::string> tests;
  ref::for_each_string(alphabet, test_len, [&](const std::string& s) { tests.push_back(s); });
  return lstar_learn(member, alphabet, finite_test_teacher(member, tests));
}

}  // namespace

TEST_SUITE("dfa") {
  TEST_CASE("language {<p>} needs a four-state chain plus a dead state") {
    auto r = learn_language([](std::string_view w) { return w == "<p>"; }, "/<>p", 5);
    REQUIRE(r.converged);
    CHECK(r.dfa.size() == 5);
    CHECK(r.dfa.accepts("<p>"));
    CHECK_FALSE(r.dfa.accepts("<p"));
    CHECK(r.dfa.shortest_word() == "<p>");
  }

  TEST_CASE("single-character token: one live transition, start, accept and dead states") {
    auto r = learn_language([](std::string_view w) { return w == "{"; }, "\"{}", 3);
    REQUIRE(r.converged);
    CHECK(r.dfa.size() == 3);
    CHECK(r.dfa.words_up_to(3, 10) == std::vector<std::string>{"{"});
  }

  TEST_CASE("universal and empty languages have one state") {
    auto all = learn_language([](std::string_view) { return true; }, "ab", 3);
    CHECK(all.dfa.size() == 1);
    CHECK(all.dfa.accepting[0]);
    auto none = learn_language([](std::string_view) { return false; }, "ab", 3);
    CHECK(none.dfa.size() == 1);
    CHECK_FALSE(none.dfa.accepting[0]);
    CHECK(none.dfa.language_empty());
  }

  TEST_CASE("longest match, intersection and enumeration") {
    auto r = learn_language([](std::string_view w) { return w == "ab" || w == "abab"; }, "ab", 5);
    CHECK(r.dfa.longest_match("xababy", 1) == std::optional<std::size_t>{4});
    CHECK_FALSE(r.dfa.longest_match("xababy", 0).has_value());
    auto s = learn_language([](std::string_view w) { return w.size() == 4; }, "ab", 5);
    CHECK(intersection_witness(r.dfa, s.dfa) == "abab");
    CHECK(r.dfa.words_up_to(4, 10) == std::vector<std::string>{"ab", "abab"});
  }

  TEST_CASE("JSON round-trip and validation") {
    auto r = learn_language([](std::string_view w) { return w.size() % 3 == 1; }, "xy", 6);
    Dfa back = Dfa::from_json(r.dfa.to_json());
    CHECK(back.to_json() == r.dfa.to_json());
    Dfa broken = r.dfa;
    broken.trans[0][0] = 99;
    CHECK_THROWS(broken.validate());
  }
}

TEST_SUITE("lstar") {
  TEST_CASE("random targets are learned exactly and minimally") {
    std::mt19937_64 rng(2024);
    for (int n = 0; n < 50; ++n) {
      Dfa target = testsupport::random_dfa(rng, 1 + static_cast<std::size_t>(n % 8), "abc");
      auto member = [&](std::string_view w) { return testsupport::run_table(target, std::string(w)); };
      auto teacher = [&](const Dfa& h) { return testsupport::distinguishing_word(target, h); };
      auto r = lstar_learn(member, "abc", teacher);
      REQUIRE(r.converged);
      CHECK_FALSE(testsupport::distinguishing_word(target, r.dfa).has_value());
      CHECK(r.dfa.size() == testsupport::minimal_size(target));
    }
  }

  TEST_CASE("budget exhaustion is reported") {
    // Words whose length is a multiple of 30 need 30 states.
    auto member = [](std::string_view w) { return w.size() % 30 == 0; };
    Dfa target;
    target.alphabet = "a";
    for (int q = 0; q < 30; ++q) {
      target.trans.push_back({(q + 1) % 30});
      target.accepting.push_back(q == 0);
    }
    auto teacher = [&](const Dfa& h) { return testsupport::distinguishing_word(target, h); };
    auto r = lstar_learn(member, "a", teacher, LstarBudget{64, 8});
    CHECK_FALSE(r.converged);
  }
}
