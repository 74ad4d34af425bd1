#include "vb1/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "vb1/error.hpp"

namespace vb1 {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) {
      throw InvalidArgument("image list is not a bijection of {1.." + std::to_string(images_.size()) + "}");
    }
    seen[p] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  Perm p;
  p.images_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(const std::vector<std::vector<Point>>& cycles, std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point p = cycle[i];
      if (p >= degree) {
        throw InvalidArgument("cycle point " + std::to_string(p + 1) + " exceeds degree " + std::to_string(degree));
      }
      if (used[p]) throw InvalidArgument("point " + std::to_string(p + 1) + " occurs in two cycles");
      used[p] = true;
      images[p] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Perm(std::move(images));
}

Perm Perm::parse(std::string_view text, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::size_t largest = 0;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) -> void {
    throw ParseError("permutation \"" + std::string(text) + "\" at column " + std::to_string(i + 1) + ": " + what);
  };
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_space();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i >= text.size()) fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a point");
      unsigned long long value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<unsigned>(text[i] - '0');
        if (value > 100000000ULL) fail("point too large");
        ++i;
      }
      if (value == 0) fail("points are 1-based");
      cycle.push_back(static_cast<Point>(value - 1));
      largest = std::max<std::size_t>(largest, value);
    }
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip_space();
  }
  if (degree == 0) degree = std::max<std::size_t>(largest, 1);
  if (largest > degree) {
    throw ParseError("permutation \"" + std::string(text) + "\": point " + std::to_string(largest) +
                     " exceeds degree " + std::to_string(degree));
  }
  try {
    return from_cycles(cycles, degree);
  } catch (const InvalidArgument& e) {
    throw ParseError("permutation \"" + std::string(text) + "\": " + e.what());
  }
}

Perm Perm::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t p = 0; p < images_.size(); ++p) inv[images_[p]] = static_cast<Point>(p);
  Perm q;
  q.images_ = std::move(inv);
  return q;
}

Perm Perm::pow(long long exponent) const {
  Perm base = exponent < 0 ? inverse() : *this;
  unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-(exponent + 1)) + 1
                                      : static_cast<unsigned long long>(exponent);
  Perm result = identity(degree());
  while (e != 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

bool Perm::is_identity() const {
  for (std::size_t p = 0; p < images_.size(); ++p) {
    if (images_[p] != p) return false;
  }
  return true;
}

bool Perm::commutes_with(const Perm& other) const { return (*this) * other == other * (*this); }

std::vector<std::vector<Perm::Point>> Perm::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (Point start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::vector<Point> cycle;
    for (Point p = start; !seen[p]; p = images_[p]) {
      seen[p] = true;
      cycle.push_back(p);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::size_t Perm::cycle_count() const { return cycles().size(); }

mpz_class Perm::order() const {
  mpz_class result = 1;
  for (const auto& cycle : cycles()) {
    mpz_class len = static_cast<unsigned long>(cycle.size());
    mpz_lcm(result.get_mpz_t(), result.get_mpz_t(), len.get_mpz_t());
  }
  return result;
}

std::string Perm::to_string() const {
  std::string out;
  for (const auto& cycle : cycles()) {
    if (cycle.size() < 2) continue;
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i != 0) out += ' ';
      out += std::to_string(cycle[i] + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) {
    throw InvalidArgument("permutation degrees differ (" + std::to_string(a.degree()) + " vs " +
                          std::to_string(b.degree()) + ")");
  }
  std::vector<Perm::Point> images(a.degree());
  for (std::size_t p = 0; p < images.size(); ++p) images[p] = b.images_[a.images_[p]];
  Perm q;
  q.images_ = std::move(images);
  return q;
}

Perm product(const std::vector<Perm>& factors, std::size_t degree) {
  Perm result = Perm::identity(degree);
  for (const auto& f : factors) result = result * f;
  return result;
}

std::vector<std::vector<Perm::Point>> orbits(const std::vector<Perm>& gens, std::size_t degree) {
  std::vector<std::vector<Perm::Point>> out;
  std::vector<bool> seen(degree, false);
  std::vector<Perm> inverses;
  for (const auto& g : gens) inverses.push_back(g.inverse());
  for (Perm::Point start = 0; start < degree; ++start) {
    if (seen[start]) continue;
    std::vector<Perm::Point> orbit{start};
    seen[start] = true;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      Perm::Point p = orbit[head];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        for (Perm::Point q : {gens[k](p), inverses[k](p)}) {
          if (!seen[q]) {
            seen[q] = true;
            orbit.push_back(q);
          }
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace vb1
