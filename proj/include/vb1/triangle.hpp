#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vb1/cover.hpp"
#include "vb1/finite_group.hpp"
#include "vb1/matrix.hpp"

namespace vb1 {

// A finite quotient of the (2n, 2n, n) triangle group: a, b of order 2n
// with ab of order n, generating the whole table.
struct QuotientCertificate {
  unsigned n = 2;
  std::string source;                  // "cyclic", "GL(2,p)" or "symmetric"
  std::optional<std::uint32_t> prime;  // field size for matrix groups
  std::optional<std::uint32_t> symmetric_degree;
  FiniteGroupTable group = FiniteGroupTable::cyclic(1);
  FiniteGroupTable::Element a = 0;
  FiniteGroupTable::Element b = 0;
  std::size_t attempts = 0;

  std::size_t order() const { return group.order(); }
  // Re-derives the three element orders and the closure.
  bool verify() const;
  Json to_json() const;
};

struct TriangleSearch {
  std::size_t budget = 20000;  // random pairs drawn per prime or degree
  std::uint64_t seed = 7;
  std::size_t cap = 2000;      // largest group table built
  std::size_t min_order = 1;   // smaller quotients are skipped
};

// n = 2 gives Z/4 with a = b = 1.  For n >= 3 random pairs in GL(2, p) are
// tried for ascending primes, then symmetric groups of degree <= 8 when
// n <= 3.  Throws ComputationError when the budget runs out.
QuotientCertificate find_triangle_quotient(unsigned n, const TriangleSearch& search = {});

// Grid cover with sigma_1 = L(a), sigma_3 = L(b), sigma_2, sigma_4 their
// inverses, L the left regular representation.
PermCover case2_cover(const QuotientCertificate& cert);

struct Case2Certificates {
  std::size_t cycles_sigma1 = 0;
  std::size_t cycles_sigma3 = 0;
  std::size_t cycles_product = 0;  // sigma_1 sigma_3
  std::size_t genus_row2 = 0;
  Rational bound;                  // 2 + N (1 - 2/n)
  bool counts_match = false;       // N/6, N/6, N/3 pattern: N / element order
  Json to_json() const;
};

Case2Certificates case2_certificates(const QuotientCertificate& cert);

}  // namespace vb1
