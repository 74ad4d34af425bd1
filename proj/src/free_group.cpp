#include "vb1/free_group.hpp"

#include <algorithm>
#include <cctype>

#include "vb1/error.hpp"

namespace vb1 {

namespace {

bool valid_name(const std::string& name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_name(names_[i])) throw InvalidArgument("generator name \"" + names_[i] + "\" must start lowercase");
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) throw InvalidArgument("duplicate generator name \"" + names_[i] + "\"");
    }
  }
}

Alphabet Alphabet::of(std::string_view space_separated) {
  std::vector<std::string> names;
  std::string cur;
  for (char c : space_separated) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) names.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) names.push_back(std::move(cur));
  return Alphabet(std::move(names));
}

Alphabet Alphabet::numbered(std::string_view stem, std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) names.push_back(std::string(stem) + std::to_string(i));
  return Alphabet(std::move(names));
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::string Alphabet::letter_name(Letter l) const {
  std::size_t g = letter_gen(l);
  if (g >= names_.size()) throw InvalidArgument("letter outside the alphabet");
  std::string s = names_[g];
  if (l < 0) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

Alphabet Alphabet::with(std::string name) const {
  std::vector<std::string> names = names_;
  names.push_back(std::move(name));
  return Alphabet(std::move(names));
}

std::vector<Letter> free_reduce(const std::vector<Letter>& letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (l == 0) throw InvalidArgument("letter 0 is not a generator");
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

std::vector<Letter> inverse_letters(const std::vector<Letter>& letters) {
  std::vector<Letter> out(letters.rbegin(), letters.rend());
  for (Letter& l : out) l = -l;
  return out;
}

FreeWord::FreeWord(std::vector<Letter> letters) : letters_(free_reduce(letters)) {}

FreeWord FreeWord::commutator(const FreeWord& a, const FreeWord& b) { return a * b * a.inverse() * b.inverse(); }

std::size_t FreeWord::rank_used() const {
  std::size_t r = 0;
  for (Letter l : letters_) r = std::max(r, letter_gen(l) + 1);
  return r;
}

FreeWord FreeWord::inverse() const {
  FreeWord w;
  w.letters_ = inverse_letters(letters_);
  return w;
}

FreeWord FreeWord::pow(long long e) const {
  FreeWord base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  FreeWord result;
  while (k != 0) {
    if (k & 1U) result = result * base;
    base = base * base;
    k >>= 1U;
  }
  return result;
}

FreeWord FreeWord::cyclically_reduced() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
    ++lo;
    --hi;
  }
  FreeWord w;
  w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                    letters_.begin() + static_cast<std::ptrdiff_t>(hi));
  return w;
}

std::vector<long long> FreeWord::exponent_sums(std::size_t rank) const {
  std::vector<long long> out(rank, 0);
  for (Letter l : letters_) {
    std::size_t g = letter_gen(l);
    if (g >= rank) throw InvalidArgument("word uses a generator beyond the rank");
    out[g] += l > 0 ? 1 : -1;
  }
  return out;
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) {
  std::size_t cancel = 0;
  const auto& x = a.letters_;
  const auto& y = b.letters_;
  while (cancel < x.size() && cancel < y.size() && x[x.size() - 1 - cancel] == -y[cancel]) ++cancel;
  FreeWord w;
  w.letters_.reserve(x.size() + y.size() - 2 * cancel);
  w.letters_.insert(w.letters_.end(), x.begin(), x.end() - static_cast<std::ptrdiff_t>(cancel));
  w.letters_.insert(w.letters_.end(), y.begin() + static_cast<std::ptrdiff_t>(cancel), y.end());
  return w;
}

bool are_conjugate(const FreeWord& a, const FreeWord& b) {
  const FreeWord ca = a.cyclically_reduced();
  const FreeWord cb = b.cyclically_reduced();
  const auto& x = ca.letters();
  const auto& y = cb.letters();
  if (x.size() != y.size()) return false;
  if (x.empty()) return true;
  std::vector<Letter> doubled(x);
  doubled.insert(doubled.end(), x.begin(), x.end());
  return std::search(doubled.begin(), doubled.end(), y.begin(), y.end()) != doubled.end();
}

namespace {

std::optional<Letter> lookup_token(const std::string& name, const Alphabet& alphabet) {
  if (auto g = alphabet.find(name)) return gen_letter(*g);
  if (!name.empty() && std::isupper(static_cast<unsigned char>(name[0]))) {
    std::string lower = name;
    lower[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(lower[0])));
    if (auto g = alphabet.find(lower)) return -gen_letter(*g);
  }
  return std::nullopt;
}

}  // namespace

std::vector<Letter> parse_letters(std::string_view text, const Alphabet& alphabet) {
  std::vector<Letter> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("word \"" + std::string(text) + "\" at column " + std::to_string(i + 1) + ": " + what);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '1' && (i + 1 == text.size() || !std::isalnum(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected a generator name");
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    std::string token(text.substr(start, i - start));
    long long exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool negative = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected an exponent");
      exponent = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        exponent = exponent * 10 + (text[i] - '0');
        if (exponent > 1000000) fail("exponent too large");
        ++i;
      }
      if (negative) exponent = -exponent;
    }
    std::vector<Letter> token_letters;
    if (auto l = lookup_token(token, alphabet)) {
      token_letters.push_back(*l);
    } else {
      for (char ch : token) {
        auto l = lookup_token(std::string(1, ch), alphabet);
        if (!l) {
          i = start;
          fail("unknown generator \"" + token + "\"");
        }
        token_letters.push_back(*l);
      }
    }
    std::vector<Letter> unit = exponent < 0 ? inverse_letters(token_letters) : token_letters;
    for (long long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) {
      out.insert(out.end(), unit.begin(), unit.end());
    }
  }
  return out;
}

FreeWord parse_word(std::string_view text, const Alphabet& alphabet) {
  return FreeWord(parse_letters(text, alphabet));
}

std::string format_letters(const std::vector<Letter>& letters, const Alphabet& alphabet) {
  if (letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i != 0) out += ' ';
    out += alphabet.letter_name(letters[i]);
  }
  return out;
}

std::string format_word(const FreeWord& w, const Alphabet& alphabet) { return format_letters(w.letters(), alphabet); }

}  // namespace vb1
