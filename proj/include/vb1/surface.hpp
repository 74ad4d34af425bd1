#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vb1/free_group.hpp"

namespace vb1 {

// A punctured surface as a one-vertex ribbon graph (a rose).  Half-edge
// 2g is the outgoing end of petal g and 2g+1 its incoming end.  The cyclic
// order of half-edges at the vertex is derived from the boundary words:
// reading consecutive letters a, b of a boundary word, the arrival end of a
// is followed by the departure end of b.
class FatSurface {
 public:
  FatSurface() = default;
  // Throws InvalidArgument when the words do not use every half-edge exactly
  // once or do not close up into a single vertex.
  FatSurface(Alphabet names, std::vector<FreeWord> boundary_words);

  static FatSurface punctured_torus();
  // Generators x, y, z1..z_{k-1}; boundary words as in surface_boundary_words.
  static FatSurface k_punctured_torus(std::size_t k);

  std::size_t rank() const { return names_.size(); }
  const Alphabet& names() const { return names_; }
  const std::vector<FreeWord>& boundary_words() const { return boundary_; }
  std::size_t punctures() const { return boundary_.size(); }
  long euler_characteristic() const { return 1 - static_cast<long>(rank()); }
  std::size_t genus() const { return genus_; }

  std::uint32_t next_half_edge(std::uint32_t h) const { return next_[h]; }
  // Cyclic order starting at half-edge 0.
  std::vector<std::uint32_t> cyclic_order() const;
  // Boundary cycles recovered from the ribbon structure.
  std::vector<std::vector<Letter>> trace_boundary() const;

  static std::uint32_t departure(Letter l) {
    return static_cast<std::uint32_t>(2 * letter_gen(l) + (l > 0 ? 0 : 1));
  }
  static std::uint32_t arrival(Letter l) { return static_cast<std::uint32_t>(2 * letter_gen(l) + (l > 0 ? 1 : 0)); }

  friend bool operator==(const FatSurface& a, const FatSurface& b) {
    return a.names_ == b.names_ && a.boundary_ == b.boundary_;
  }

 private:
  Alphabet names_;
  std::vector<FreeWord> boundary_;
  std::vector<std::uint32_t> next_;
  std::size_t genus_ = 0;
};

}  // namespace vb1
