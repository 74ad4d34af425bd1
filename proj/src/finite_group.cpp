#include "vb1/finite_group.hpp"

#include "vb1/error.hpp"

namespace vb1 {

FiniteGroupTable::FiniteGroupTable(std::vector<std::string> labels, std::vector<Element> table, Element identity)
    : labels_(std::move(labels)), table_(std::move(table)), identity_(identity) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InvalidArgument("group table is empty");
  if (table_.size() != n * n) throw InvalidArgument("group table has wrong size");
  if (identity_ >= n) throw InvalidArgument("identity index out of range");
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> row_seen(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      Element x = table_[a * n + b];
      if (x >= n || row_seen[x]) throw InvalidArgument("group table row " + labels_[a] + " is not a permutation");
      row_seen[x] = true;
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<bool> col_seen(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      Element x = table_[a * n + b];
      if (col_seen[x]) throw InvalidArgument("group table column " + labels_[b] + " is not a permutation");
      col_seen[x] = true;
    }
  }
  inverses_.assign(n, 0);
  for (Element a = 0; a < n; ++a) {
    if (multiply(identity_, a) != a || multiply(a, identity_) != a) {
      throw InvalidArgument("identity law fails at " + labels_[a]);
    }
    for (Element b = 0; b < n; ++b) {
      if (multiply(a, b) == identity_) {
        if (multiply(b, a) != identity_) throw InvalidArgument("inverse law fails at " + labels_[a]);
        inverses_[a] = b;
        break;
      }
    }
  }
}

FiniteGroupTable FiniteGroupTable::cyclic(std::uint32_t n) {
  if (n == 0) throw InvalidArgument("cyclic group of order 0");
  std::vector<std::string> labels(n);
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (std::uint32_t b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  return FiniteGroupTable(std::move(labels), std::move(table), 0);
}

FiniteGroupTable::Element FiniteGroupTable::power(Element a, long long e) const {
  Element base = e < 0 ? inverse(a) : a;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  Element result = identity_;
  while (k != 0) {
    if (k & 1U) result = multiply(result, base);
    base = multiply(base, base);
    k >>= 1U;
  }
  return result;
}

std::uint64_t FiniteGroupTable::element_order(Element a) const {
  std::uint64_t k = 1;
  for (Element x = a; x != identity_; x = multiply(x, a)) ++k;
  return k;
}

FiniteGroupTable::Element FiniteGroupTable::index_of(std::string_view label) const {
  for (Element a = 0; a < labels_.size(); ++a) {
    if (labels_[a] == label) return a;
  }
  throw InvalidArgument("unknown group element \"" + std::string(label) + "\"");
}

bool FiniteGroupTable::check_associativity(Rng& rng, std::size_t samples) const {
  for (std::size_t s = 0; s < samples; ++s) {
    auto a = static_cast<Element>(rng.below(order()));
    auto b = static_cast<Element>(rng.below(order()));
    auto c = static_cast<Element>(rng.below(order()));
    if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c))) return false;
  }
  return true;
}

bool FiniteGroupTable::check_associativity_exhaustive() const {
  const auto n = static_cast<Element>(order());
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c))) return false;
  return true;
}

std::size_t FiniteGroupTable::generated_subgroup_order(const std::vector<Element>& gens) const {
  std::vector<bool> seen(order(), false);
  std::vector<Element> queue{identity_};
  seen[identity_] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Element g : gens) {
      Element x = multiply(queue[head], g);
      if (!seen[x]) {
        seen[x] = true;
        queue.push_back(x);
      }
    }
  }
  return queue.size();
}

Perm left_regular_representation(const FiniteGroupTable& group, FiniteGroupTable::Element g) {
  if (g >= group.order()) throw InvalidArgument("group element index out of range");
  std::vector<Perm::Point> images(group.order());
  for (FiniteGroupTable::Element h = 0; h < group.order(); ++h) images[h] = group.multiply(g, h);
  return Perm(std::move(images));
}

Perm left_regular_representation(const FiniteGroupTable& group, std::string_view label) {
  return left_regular_representation(group, group.index_of(label));
}

}  // namespace vb1
