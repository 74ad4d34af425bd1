#include "vb1/free_aut.hpp"

#include <cstdint>

#include <cctype>

#include "vb1/error.hpp"

namespace vb1 {

namespace {

void append_reduced(std::vector<Letter>& out, const std::vector<Letter>& w, bool inverted) {
  const std::size_t n = w.size();
  for (std::size_t k = 0; k < n; ++k) {
    Letter l = inverted ? -w[n - 1 - k] : w[k];
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
}

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

FreeAut FreeAut::identity(std::size_t rank) {
  std::vector<FreeWord> gens;
  for (std::size_t g = 0; g < rank; ++g) gens.push_back(FreeWord::generator(g));
  return FreeAut(gens, gens);
}

FreeAut::FreeAut(std::vector<FreeWord> images) : images_(std::move(images)) {
  for (const auto& w : images_) {
    if (w.rank_used() > images_.size()) throw InvalidArgument("automorphism image uses a generator beyond the rank");
  }
}

FreeAut::FreeAut(std::vector<FreeWord> images, std::vector<FreeWord> inverse_images)
    : FreeAut(std::move(images)) {
  if (inverse_images.size() != images_.size()) throw InvalidArgument("inverse has a different rank");
  FreeAut inv(std::move(inverse_images));
  for (std::size_t g = 0; g < rank(); ++g) {
    FreeWord x = FreeWord::generator(g);
    if (apply(inv.image(g)) != x || inv.apply(image(g)) != x) {
      throw InvalidArgument("claimed inverse does not compose to the identity at generator " + std::to_string(g + 1));
    }
  }
  inverse_images_ = inv.images_;
}

FreeAut FreeAut::inverse() const {
  if (!certified()) throw InvalidArgument("automorphism has no certified inverse");
  FreeAut inv;
  inv.images_ = inverse_images_;
  inv.inverse_images_ = images_;
  return inv;
}

std::vector<Letter> FreeAut::apply_letters(const std::vector<Letter>& w) const {
  std::vector<Letter> out;
  for (Letter l : w) {
    std::size_t g = letter_gen(l);
    if (g >= rank()) {
      throw InvalidArgument("word uses generator " + std::to_string(g + 1) + " but the automorphism has rank " +
                            std::to_string(rank()));
    }
    append_reduced(out, images_[g].letters(), l < 0);
  }
  return out;
}

FreeWord FreeAut::apply(const FreeWord& w) const { return FreeWord(apply_letters(w.letters())); }

FreeAut FreeAut::power(long long m, std::size_t length_cap) const {
  if (m < 0) return inverse().power(-m, length_cap);
  FreeAut result = identity(rank());
  FreeAut base = *this;
  auto e = static_cast<unsigned long long>(m);
  while (e != 0) {
    if (e & 1U) result = compose(result, base, length_cap);
    e >>= 1U;
    if (e != 0) base = compose(base, base, length_cap);
  }
  return result;
}

bool FreeAut::is_identity() const {
  for (std::size_t g = 0; g < rank(); ++g) {
    if (images_[g] != FreeWord::generator(g)) return false;
  }
  return true;
}

IntMatrix FreeAut::abelianized() const {
  IntMatrix m(rank(), rank());
  for (std::size_t j = 0; j < rank(); ++j) {
    std::vector<long long> sums = images_[j].exponent_sums(rank());
    for (std::size_t i = 0; i < rank(); ++i) m(i, j) = Integer(static_cast<long>(sums[i]));
  }
  return m;
}

std::size_t FreeAut::total_length() const {
  std::size_t n = 0;
  for (const auto& w : images_) n += w.length();
  return n;
}

std::vector<Perm> FreeAut::pull_back(const std::vector<Perm>& phi) const {
  if (phi.size() != rank()) throw InvalidArgument("representation rank differs from automorphism rank");
  std::size_t degree = phi.empty() ? 0 : phi[0].degree();
  std::vector<Perm> out;
  out.reserve(rank());
  for (const auto& w : images_) out.push_back(word_permutation(phi, w.letters(), degree));
  return out;
}

FreeAut compose(const FreeAut& a, const FreeAut& b, std::size_t length_cap) {
  if (a.rank() != b.rank()) {
    throw InvalidArgument("cannot compose automorphisms of ranks " + std::to_string(a.rank()) + " and " +
                          std::to_string(b.rank()));
  }
  auto fail = [&] { throw ComputationError("composed automorphism exceeds " + std::to_string(length_cap) + " letters"); };
  const std::size_t raw_cap = length_cap > SIZE_MAX / 16 ? SIZE_MAX : 16 * length_cap;
  // Images of every word in ws under outer, with the length caps applied
  // before anything is allocated.
  auto substitute_all = [&](const FreeAut& outer, const std::vector<FreeWord>& ws) {
    std::vector<FreeWord> out;
    std::size_t total = 0;
    for (const auto& w : ws) {
      std::size_t raw = 0;
      for (Letter l : w.letters()) {
        raw += outer.image(letter_gen(l)).length();
        if (raw > raw_cap) fail();
      }
      out.push_back(outer.apply(w));
      total += out.back().length();
      if (total > length_cap) fail();
    }
    return out;
  };
  std::vector<FreeWord> images = substitute_all(a, b.images());
  if (!a.certified() || !b.certified()) return FreeAut(std::move(images));
  // (a o b)^-1 = b^-1 o a^-1, correct by construction.
  FreeAut out(std::move(images));
  out.inverse_images_ = substitute_all(b.inverse(), a.inverse().images());
  return out;
}

std::optional<FreeAut> certify_automorphism(const FreeAut& f) {
  if (f.certified()) return f;
  const std::size_t r = f.rank();
  std::vector<FreeWord> u = f.images();
  // Each move replaces u_i by u_i * u_j^e (right) or u_j^e * u_i (left);
  // the same substitution on generators is the elementary automorphism nu
  // with f o nu = new tuple.
  struct Move {
    std::size_t i, j;
    int e;
    bool right;
  };
  std::vector<Move> moves;
  for (std::size_t iter = 0; iter < 100000; ++iter) {
    bool moved = false;
    for (std::size_t i = 0; i < r && !moved; ++i) {
      for (std::size_t j = 0; j < r && !moved; ++j) {
        if (i == j) continue;
        for (int e : {1, -1}) {
          FreeWord uj = e > 0 ? u[j] : u[j].inverse();
          for (bool right : {true, false}) {
            FreeWord cand = right ? u[i] * uj : uj * u[i];
            if (cand.length() < u[i].length()) {
              u[i] = cand;
              moves.push_back({i, j, e, right});
              moved = true;
              break;
            }
          }
          if (moved) break;
        }
      }
    }
    if (!moved) break;
  }
  std::vector<FreeWord> pi_inverse(r);
  std::vector<bool> hit(r, false);
  for (std::size_t i = 0; i < r; ++i) {
    if (u[i].length() != 1) return std::nullopt;
    Letter l = u[i].letters()[0];
    std::size_t g = letter_gen(l);
    if (hit[g]) return std::nullopt;
    hit[g] = true;
    // pi: x_i -> l, so pi^{-1}: x_g -> x_i^{sign}
    pi_inverse[g] = l > 0 ? FreeWord::generator(i) : FreeWord::generator(i).inverse();
  }
  FreeAut inverse(pi_inverse);
  for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
    std::vector<FreeWord> nu;
    for (std::size_t g = 0; g < r; ++g) nu.push_back(FreeWord::generator(g));
    FreeWord xj = it->e > 0 ? FreeWord::generator(it->j) : FreeWord::generator(it->j).inverse();
    nu[it->i] = it->right ? nu[it->i] * xj : xj * nu[it->i];
    inverse = compose(FreeAut(nu), inverse);
  }
  try {
    return FreeAut(f.images(), inverse.images());
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

Perm::Point act(const std::vector<Perm>& phi, Perm::Point p, const std::vector<Letter>& w) {
  std::vector<Perm> inverses;
  inverses.reserve(phi.size());
  for (const auto& g : phi) inverses.push_back(g.inverse());
  for (Letter l : w) {
    std::size_t g = letter_gen(l);
    if (g >= phi.size()) throw InvalidArgument("word uses a generator outside the representation");
    p = l > 0 ? phi[g](p) : inverses[g](p);
  }
  return p;
}

Perm word_permutation(const std::vector<Perm>& phi, const std::vector<Letter>& w, std::size_t degree) {
  std::vector<Perm::Point> images(degree);
  std::vector<Perm> inverses;
  inverses.reserve(phi.size());
  for (const auto& g : phi) inverses.push_back(g.inverse());
  for (Perm::Point s = 0; s < degree; ++s) {
    Perm::Point p = s;
    for (Letter l : w) {
      std::size_t g = letter_gen(l);
      if (g >= phi.size()) throw InvalidArgument("word uses a generator outside the representation");
      p = l > 0 ? phi[g](p) : inverses[g](p);
    }
    images[s] = p;
  }
  return Perm(std::move(images));
}

Alphabet surface_alphabet(std::size_t k) {
  if (k == 0) throw InvalidArgument("a punctured torus needs at least one puncture");
  std::vector<std::string> names{"x", "y"};
  for (std::size_t j = 1; j < k; ++j) names.push_back("z" + std::to_string(j));
  return Alphabet(std::move(names));
}

std::vector<FreeWord> surface_boundary_words(std::size_t k) {
  if (k == 0) throw InvalidArgument("a punctured torus needs at least one puncture");
  std::vector<FreeWord> out;
  FreeWord tail = FreeWord::commutator(FreeWord::generator(0), FreeWord::generator(1));
  for (std::size_t j = 1; j < k; ++j) {
    FreeWord z = FreeWord::generator(1 + j);
    out.push_back(z);
    tail = z.inverse() * tail;
  }
  out.push_back(tail);
  return out;
}

FreeAut twist_x(std::size_t k) {
  FreeAut id = FreeAut::identity(k + 1);
  std::vector<FreeWord> img = id.images();
  std::vector<FreeWord> inv = id.images();
  img[1] = FreeWord({2, 1});
  inv[1] = FreeWord({2, -1});
  return FreeAut(img, inv);
}

FreeAut twist_y(std::size_t k) {
  FreeAut id = FreeAut::identity(k + 1);
  std::vector<FreeWord> img = id.images();
  std::vector<FreeWord> inv = id.images();
  img[0] = FreeWord({1, -2});
  inv[0] = FreeWord({1, 2});
  return FreeAut(img, inv);
}

FreeAut twist_all_punctures(std::size_t k) {
  FreeAut id = FreeAut::identity(k + 1);
  std::vector<FreeWord> img = id.images();
  std::vector<FreeWord> inv = id.images();
  FreeWord c = FreeWord::commutator(FreeWord::generator(0), FreeWord::generator(1));
  for (std::size_t j = 1; j < k; ++j) {
    FreeWord z = FreeWord::generator(1 + j);
    img[1 + j] = c * z * c.inverse();
    inv[1 + j] = c.inverse() * z * c;
  }
  return FreeAut(img, inv);
}

FreeAut twist_adjacent_punctures(std::size_t k, std::size_t j) {
  if (j < 1 || j + 2 > k) {
    throw InvalidArgument("adjacent puncture twist A" + std::to_string(j) + " needs 1 <= j <= k-2 (k = " +
                          std::to_string(k) + ")");
  }
  FreeAut id = FreeAut::identity(k + 1);
  std::vector<FreeWord> img = id.images();
  std::vector<FreeWord> inv = id.images();
  FreeWord a = FreeWord::generator(1 + j);
  FreeWord b = FreeWord::generator(2 + j);
  FreeWord w = a * b;
  img[1 + j] = w * a * w.inverse();
  img[2 + j] = w * b * w.inverse();
  inv[1 + j] = w.inverse() * a * w;
  inv[2 + j] = w.inverse() * b * w;
  return FreeAut(img, inv);
}

FreeAut parse_twist_word(std::string_view text, std::size_t k) {
  FreeAut result = FreeAut::identity(k + 1);
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("twist word \"" + std::string(text) + "\" at column " + std::to_string(i + 1) + ": " + what);
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*' || text[i] == '.') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    std::string name(text.substr(start, i - start));
    if (name.empty()) fail("expected a twist name");
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
        if (exponent > 100000) fail("exponent too large");
        ++i;
      }
      if (negative) exponent = -exponent;
    }
    FreeAut twist;
    if (name == "Dx") {
      twist = twist_x(k);
    } else if (name == "Dy") {
      twist = twist_y(k);
    } else if (name == "B") {
      if (k < 2) fail("B needs at least two punctures");
      twist = twist_all_punctures(k);
    } else if (name.size() > 1 && name[0] == 'A' &&
               name.find_first_not_of("0123456789", 1) == std::string::npos) {
      std::size_t j = std::stoul(name.substr(1));
      if (j < 1 || j + 2 > k) fail("A" + std::to_string(j) + " needs 1 <= j <= k-2");
      twist = twist_adjacent_punctures(k, j);
    } else if (name == "id" || name == "1") {
      twist = FreeAut::identity(k + 1);
    } else {
      i = start;
      fail("unknown twist \"" + name + "\" (expected Dx, Dy, B, Aj or id)");
    }
    result = compose(result, twist.power(exponent));
  }
  return result;
}

std::vector<std::optional<PunctureImage>> puncture_action(const FreeAut& f, std::size_t k) {
  if (f.rank() != k + 1) throw InvalidArgument("automorphism rank does not match the k-punctured torus");
  std::vector<FreeWord> beta = surface_boundary_words(k);
  std::vector<std::optional<PunctureImage>> out(k);
  for (std::size_t j = 0; j < k; ++j) {
    FreeWord img = f.apply(beta[j]);
    for (std::size_t t = 0; t < k && !out[j]; ++t) {
      if (are_conjugate(img, beta[t])) {
        out[j] = PunctureImage{t, false};
      } else if (are_conjugate(img, beta[t].inverse())) {
        out[j] = PunctureImage{t, true};
      }
    }
  }
  return out;
}

bool fixes_punctures(const FreeAut& f, std::size_t k) {
  auto action = puncture_action(f, k);
  for (std::size_t j = 0; j < k; ++j) {
    if (!action[j] || action[j]->puncture != j) return false;
  }
  return true;
}

FreeAut parse_automorphism(std::string_view text, const Alphabet& alphabet) {
  std::vector<FreeWord> images;
  for (std::size_t g = 0; g < alphabet.size(); ++g) images.push_back(FreeWord::generator(g));
  std::vector<bool> assigned(alphabet.size(), false);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find_first_of(";\n", pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty()) continue;
    std::size_t arrow = line.find("->");
    if (arrow == std::string::npos) {
      throw ParseError("automorphism line " + std::to_string(line_no) + " (\"" + line + "\"): expected \"g -> word\"");
    }
    std::string lhs = trim(std::string_view(line).substr(0, arrow));
    auto g = alphabet.find(lhs);
    if (!g) {
      throw ParseError("automorphism line " + std::to_string(line_no) + ": unknown generator \"" + lhs + "\"");
    }
    if (assigned[*g]) {
      throw ParseError("automorphism line " + std::to_string(line_no) + ": generator \"" + lhs + "\" given twice");
    }
    assigned[*g] = true;
    images[*g] = parse_word(std::string_view(line).substr(arrow + 2), alphabet);
  }
  auto certified = certify_automorphism(FreeAut(images));
  if (!certified) throw InvalidArgument("could not certify the given endomorphism as an automorphism");
  return *certified;
}

std::string format_automorphism(const FreeAut& f, const Alphabet& alphabet) {
  std::string out;
  for (std::size_t g = 0; g < f.rank(); ++g) {
    if (g != 0) out += '\n';
    out += alphabet.name(g) + " -> " + format_word(f.image(g), alphabet);
  }
  return out;
}

}  // namespace vb1
