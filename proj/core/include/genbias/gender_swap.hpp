#ifndef GENBIAS_GENDER_SWAP_HPP
#define GENBIAS_GENDER_SWAP_HPP

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace genbias {

/// Token-level gender-swap table. Lookups are case-insensitive; the
/// replacement reproduces the original casing pattern (lower, Title,
/// UPPER). The mapping is an involution except for the explicitly listed
/// asymmetric entries (in the built-in table: "him" -> "her" and
/// "hers" -> "his", since "her" maps back to "his").
class SwapLexicon {
 public:
  static SwapLexicon builtin();

  /// JSON file with {"symmetric": [[a, b], ...], "asymmetric": [[from, to],
  /// ...]} (a plain array of pairs is treated as symmetric). Symmetric
  /// pairs install both directions; conflicting definitions are rejected.
  static SwapLexicon from_json_file(const std::string& path);

  /// Replacement for a lowercase token, if the table has one.
  std::optional<std::string_view> swap_lower(std::string_view lower_token) const;

  const std::unordered_map<std::string, std::string>& mapping() const { return map_; }

  /// Tokens t with swap(swap(t)) != t.
  std::vector<std::string> asymmetric_tokens() const;

  /// Tokens t with swap(swap(t)) == t.
  std::vector<std::string> involutive_tokens() const;

 private:
  void add_pair(const std::string& a, const std::string& b, bool symmetric);

  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, std::string> map_;
};

/// Whitespace-and-punctuation tokenizer used by the swap transform:
/// punctuation is detached, contractions stay whole (an apostrophe joins a
/// token only between two alphanumeric characters).
std::vector<std::string> tokenize(std::string_view text);

/// Applies the swap table to a single token, preserving its casing
/// pattern. Returns the token unchanged when the table has no entry.
std::string swap_token(std::string_view token, const SwapLexicon& lex);

/// Swaps every mapped token in the text. Bytes outside token spans
/// (whitespace, punctuation) pass through untouched, so token count and
/// layout are preserved.
std::string gender_swap_text(std::string_view text, const SwapLexicon& lex);

}  // namespace genbias

#endif  // GENBIAS_GENDER_SWAP_HPP
