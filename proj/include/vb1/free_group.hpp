#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vb1 {

// Generator g (0-based) is the letter g+1; its inverse is -(g+1).
using Letter = int;

inline Letter gen_letter(std::size_t g) { return static_cast<Letter>(g) + 1; }
inline std::size_t letter_gen(Letter l) { return static_cast<std::size_t>(l < 0 ? -l : l) - 1; }
inline bool letter_positive(Letter l) { return l > 0; }

// Names of free generators.  Names start with a lowercase letter; in text
// the same name with its first letter uppercased denotes the inverse.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);
  // "x y t" style convenience.
  static Alphabet of(std::string_view space_separated);
  // s1, s2, ... sN
  static Alphabet numbered(std::string_view stem, std::size_t count);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t g) const { return names_.at(g); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::string letter_name(Letter l) const;
  Alphabet with(std::string name) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

// Freely reduced word in a free group.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::vector<Letter> letters);
  static FreeWord generator(std::size_t g) { return FreeWord({gen_letter(g)}); }
  static FreeWord commutator(const FreeWord& a, const FreeWord& b);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  // 1 + largest generator index used, 0 for the empty word.
  std::size_t rank_used() const;

  FreeWord inverse() const;
  FreeWord pow(long long e) const;
  FreeWord cyclically_reduced() const;
  std::vector<long long> exponent_sums(std::size_t rank) const;

  friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

 private:
  std::vector<Letter> letters_;
};

std::vector<Letter> free_reduce(const std::vector<Letter>& letters);
std::vector<Letter> inverse_letters(const std::vector<Letter>& letters);
// True when a and b are conjugate in the free group.
bool are_conjugate(const FreeWord& a, const FreeWord& b);

// Tokens are separated by whitespace, '*' or '.'.  A token is a generator
// name, optionally followed by ^k for an integer k; an uppercase first
// letter inverts.  A token that is not a name but spells a string of
// single-character names ("xyXY") is split into letters.  "1" and the
// empty string denote the identity.  Throws ParseError.
std::vector<Letter> parse_letters(std::string_view text, const Alphabet& alphabet);
FreeWord parse_word(std::string_view text, const Alphabet& alphabet);
std::string format_letters(const std::vector<Letter>& letters, const Alphabet& alphabet);
std::string format_word(const FreeWord& w, const Alphabet& alphabet);

}  // namespace vb1
