#pragma once

// Hand-written recognizers for the fixture grammars. They share no code with
// the library, so agreement with a learned model is an independent check.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace ref {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(VSTAR_FIXTURE_DIR) / name;
}

/// Recursive-descent cursor over a raw string.
class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  bool done() const { return i_ == s_.size(); }
  bool peek(char c) const { return i_ < s_.size() && s_[i_] == c; }
  bool peek(std::string_view lit) const { return s_.substr(i_, lit.size()) == lit; }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  bool eat(std::string_view lit) {
    if (!peek(lit)) return false;
    i_ += lit.size();
    return true;
  }
  bool eat_any(std::string_view set) {
    if (i_ < s_.size() && set.find(s_[i_]) != std::string_view::npos) {
      ++i_;
      return true;
    }
    return false;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

// L -> a A b L | c B | eps ; A -> g L h ; B -> d L
inline bool fig1_L(Cursor& c) {
  if (c.eat('a')) {
    if (!c.eat('g') || !fig1_L(c) || !c.eat('h') || !c.eat('b')) return false;
    return fig1_L(c);
  }
  if (c.eat('c')) return c.eat('d') && fig1_L(c);
  return true;
}
inline bool fig1(std::string_view s) {
  Cursor c(s);
  return fig1_L(c) && c.done();
}

// L -> <p> L </p> | [a-z]+
inline bool toy_xml_L(Cursor& c) {
  if (c.eat("<p>")) return toy_xml_L(c) && c.eat("</p>");
  if (!c.eat_any("abcdefghijklmnopqrstuvwxyz")) return false;
  while (c.eat_any("abcdefghijklmnopqrstuvwxyz")) {
  }
  return true;
}
inline bool toy_xml(std::string_view s) {
  Cursor c(s);
  return toy_xml_L(c) && c.done();
}

// value := {members} | [elements] | n | "[ab]*"
inline bool json_value(Cursor& c);
inline bool json_string_tail(Cursor& c) {
  while (c.eat_any("ab")) {
  }
  return c.eat('"');
}
inline bool json_value(Cursor& c) {
  if (c.eat('{')) {
    if (c.eat('}')) return true;
    do {
      if (!c.eat('"') || !json_string_tail(c) || !c.eat(':') || !json_value(c)) return false;
    } while (c.eat(','));
    return c.eat('}');
  }
  if (c.eat('[')) {
    if (c.eat(']')) return true;
    do {
      if (!json_value(c)) return false;
    } while (c.eat(','));
    return c.eat(']');
  }
  if (c.eat('n')) return true;
  return c.eat('"') && json_string_tail(c);
}
inline bool mini_json(std::string_view s) {
  Cursor c(s);
  return json_value(c) && c.done();
}

// item := ( items ) | [xy]+ ; items := eps | item (' ' item)*
inline bool lisp_item(Cursor& c);
inline bool lisp_items(Cursor& c) {
  if (c.peek(')')) return true;
  do {
    if (!lisp_item(c)) return false;
  } while (c.eat(' '));
  return true;
}
inline bool lisp_item(Cursor& c) {
  if (c.eat('(')) return lisp_items(c) && c.eat(')');
  if (!c.eat_any("xy")) return false;
  while (c.eat_any("xy")) {
  }
  return true;
}
inline bool mini_lisp(std::string_view s) {
  Cursor c(s);
  return lisp_item(c) && c.done();
}

// element := <a> content </a> | <b> content </b> ; content := (element | [xy])*
inline bool xml_element(Cursor& c);
inline bool xml_content(Cursor& c) {
  while (true) {
    if (c.peek("<a>") || c.peek("<b>")) {
      if (!xml_element(c)) return false;
    } else if (!c.eat_any("xy")) {
      return true;
    }
  }
}
inline bool xml_element(Cursor& c) {
  if (c.eat("<a>")) return xml_content(c) && c.eat("</a>");
  if (c.eat("<b>")) return xml_content(c) && c.eat("</b>");
  return false;
}
inline bool mini_xml(std::string_view s) {
  Cursor c(s);
  return xml_element(c) && c.done();
}

/// Balanced strings over one bracket pair; other characters are rejected.
inline bool dyck(std::string_view s, char open = 'a', char close = 'b') {
  long depth = 0;
  for (char ch : s) {
    if (ch == open) {
      ++depth;
    } else if (ch == close) {
      if (--depth < 0) return false;
    } else {
      return false;
    }
  }
  return depth == 0;
}

/// Full JSON syntax, via a different parser than anything in the library.
inline bool json(std::string_view s) { return nlohmann::json::accept(s); }

/// Calls `fn` on every string over `chars` of length <= max_len,
/// length-then-lexicographic.
inline void for_each_string(const std::string& chars, std::size_t max_len,
                            const std::function<void(const std::string&)>& fn) {
  std::vector<std::string> layer{""};
  fn("");
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    next.reserve(layer.size() * chars.size());
    for (const auto& w : layer) {
      for (char c : chars) {
        next.push_back(w + c);
        fn(next.back());
      }
    }
    layer = std::move(next);
  }
}

inline std::string random_string(std::mt19937_64& rng, const std::string& chars, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, chars.size() - 1);
  std::string s(len_dist(rng), '\0');
  for (auto& c : s) c = chars[pick(rng)];
  return s;
}

}  // namespace ref
