#include "vstar/interpretation.hpp"

namespace vstar {

namespace {

bool all_known(const Alphabet& chars, std::string_view raw) {
  for (char c : raw) {
    if (!chars.contains(c)) return false;
  }
  return true;
}

}  // namespace

TaggingInterpretation::TaggingInterpretation(const Alphabet& chars, Tagging tagging)
    : chars_(chars), tagging_(std::move(tagging)), alphabet_(make_tagged_alphabet(chars_, tagging_)) {
  tagging_.validate_against(chars_);
}

std::optional<TaggedString> TaggingInterpretation::image(std::string_view raw) {
  if (!all_known(chars_, raw)) return std::nullopt;
  return apply_tagging(tagging_, raw);
}

bool TaggingInterpretation::viable_prefix(std::string_view prefix, std::size_t remaining) {
  auto profile = unmatched_profile(apply_tagging(tagging_, prefix));
  return profile.pending_returns.empty() && profile.pending_calls.size() <= remaining;
}

TokenizerInterpretation::TokenizerInterpretation(const Alphabet& chars, PartialTokenizer tokenizer,
                                                 MembershipOracle& oracle)
    : chars_(chars),
      tokenizer_(std::move(tokenizer)),
      oracle_(oracle),
      alphabet_(make_token_alphabet(chars_.chars(), tokenizer_)) {}

std::optional<TaggedString> TokenizerInterpretation::image(std::string_view raw) {
  if (!all_known(chars_, raw)) return std::nullopt;
  return conv(raw, tokenize(tokenizer_, raw, oracle_));
}

bool TokenizerInterpretation::is_canonical(const TaggedString& word) {
  std::string raw = erase_brackets(word);
  auto img = image(raw);
  return img && *img == word;
}

}  // namespace vstar
