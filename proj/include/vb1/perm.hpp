#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace vb1 {

// A bijection of {0, ..., degree-1}.
//
// Points are 0-based in the C++ interface and 1-based in text, so the
// cycle string "(1 2 3 4)" moves point 0 to point 1.  Products are read
// left to right: (a * b)(p) = b(a(p)), i.e. a acts first.  Sheets of a
// cover are acted on from the right with this product.
class Perm {
 public:
  using Point = std::uint32_t;

  Perm() = default;
  // Throws InvalidArgument unless images is a bijection of {0..n-1}.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  // Builds from 0-based cycles; points not mentioned are fixed.
  static Perm from_cycles(const std::vector<std::vector<Point>>& cycles, std::size_t degree);
  // Parses 1-based cycle notation such as "(1 2 3)(4 5)".  Fixed points may
  // be omitted; degree 0 means "largest point mentioned".  Throws ParseError.
  static Perm parse(std::string_view text, std::size_t degree = 0);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point p) const { return images_[p]; }
  const std::vector<Point>& images() const { return images_; }

  Perm inverse() const;
  Perm pow(long long exponent) const;
  bool is_identity() const;
  bool commutes_with(const Perm& other) const;

  // Disjoint cycles in order of smallest point, each starting at its
  // smallest point; fixed points appear as 1-cycles.
  std::vector<std::vector<Point>> cycles() const;
  std::size_t cycle_count() const;
  mpz_class order() const;

  // 1-based cycle notation without fixed points; "()" for the identity.
  std::string to_string() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  friend bool operator==(const Perm& a, const Perm& b) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) = default;

 private:
  std::vector<Point> images_;
};

// Product of a sequence, left to right.
Perm product(const std::vector<Perm>& factors, std::size_t degree);

// Orbits of the group generated by gens, each sorted, ordered by least point.
std::vector<std::vector<Perm::Point>> orbits(const std::vector<Perm>& gens, std::size_t degree);

}  // namespace vb1
