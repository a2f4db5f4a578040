#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "vstar/oracle.hpp"
#include "vstar/tagged.hpp"
#include "vstar/tokenizer.hpp"

namespace vstar {

/// How raw strings become learner words: a character tagging or a partial
/// tokenizer followed by conv.
class Interpretation {
 public:
  virtual ~Interpretation() = default;

  virtual const TaggedAlphabet& alphabet() const = 0;
  /// Tagged image of a raw string; nullopt if it uses a character the
  /// learning alphabet lacks.
  virtual std::optional<TaggedString> image(std::string_view raw) = 0;
  /// Whether a learner word is the image of its own source string.
  virtual bool is_canonical(const TaggedString& word) = 0;
  /// Characters the raw strings of this interpretation range over.
  virtual std::string raw_chars() const = 0;
  /// False only if no extension of `prefix` by `remaining` characters can have
  /// a well-matched image. Used to prune corpus enumeration.
  virtual bool viable_prefix(std::string_view, std::size_t) { return true; }
};

class TaggingInterpretation final : public Interpretation {
 public:
  TaggingInterpretation(const Alphabet& chars, Tagging tagging);

  const TaggedAlphabet& alphabet() const override { return alphabet_; }
  std::optional<TaggedString> image(std::string_view raw) override;
  bool is_canonical(const TaggedString&) override { return true; }
  std::string raw_chars() const override { return chars_.chars(); }
  bool viable_prefix(std::string_view prefix, std::size_t remaining) override;

  const Tagging& tagging() const noexcept { return tagging_; }

 private:
  Alphabet chars_;
  Tagging tagging_;
  TaggedAlphabet alphabet_;
};

class TokenizerInterpretation final : public Interpretation {
 public:
  TokenizerInterpretation(const Alphabet& chars, PartialTokenizer tokenizer, MembershipOracle& oracle);

  const TaggedAlphabet& alphabet() const override { return alphabet_; }
  std::optional<TaggedString> image(std::string_view raw) override;
  bool is_canonical(const TaggedString& word) override;
  std::string raw_chars() const override { return chars_.chars(); }

  const PartialTokenizer& tokenizer() const noexcept { return tokenizer_; }

 private:
  Alphabet chars_;
  PartialTokenizer tokenizer_;
  MembershipOracle& oracle_;
  TaggedAlphabet alphabet_;
};

}  // namespace vstar
