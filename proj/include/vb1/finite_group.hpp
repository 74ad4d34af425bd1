#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vb1/perm.hpp"
#include "vb1/rng.hpp"

namespace vb1 {

// A finite group given by its full multiplication table.  Elements are
// indices 0..N-1 with human-readable labels.
class FiniteGroupTable {
 public:
  using Element = std::uint32_t;

  // table[a * N + b] = a*b.  Validates the Latin-square property, the
  // identity law and existence of inverses; associativity is checked on
  // sampled triples by check_associativity.
  FiniteGroupTable(std::vector<std::string> labels, std::vector<Element> table, Element identity);

  static FiniteGroupTable cyclic(std::uint32_t n);

  std::size_t order() const { return labels_.size(); }
  Element identity() const { return identity_; }
  Element multiply(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * order() + b]; }
  Element inverse(Element a) const { return inverses_[a]; }
  Element power(Element a, long long e) const;
  std::uint64_t element_order(Element a) const;

  const std::string& label(Element a) const { return labels_.at(a); }
  // Throws InvalidArgument for an unknown label.
  Element index_of(std::string_view label) const;

  bool check_associativity(Rng& rng, std::size_t samples) const;
  bool check_associativity_exhaustive() const;
  std::size_t generated_subgroup_order(const std::vector<Element>& gens) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Element> table_;
  std::vector<Element> inverses_;
  Element identity_;
};

// L(g): h -> g*h, a permutation of the element indices.
Perm left_regular_representation(const FiniteGroupTable& group, FiniteGroupTable::Element g);
Perm left_regular_representation(const FiniteGroupTable& group, std::string_view label);

}  // namespace vb1
