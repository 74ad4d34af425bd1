#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vb1/free_group.hpp"
#include "vb1/perm.hpp"

namespace vb1 {

// Schreier graph of a transitive permutation representation of a free
// group: vertices are points, and edge e = v * rank + g runs from v to
// phi_g(v).  A breadth-first spanning tree from the base point is fixed at
// construction (generators in index order, forward edges before backward);
// the non-tree edges index the free generators of the stabilizer subgroup.
class SchreierGraph {
 public:
  using Point = Perm::Point;

  SchreierGraph() = default;
  // Throws InvalidArgument when the generators have different degrees or do
  // not act transitively; the message lists the orbits.
  SchreierGraph(std::vector<Perm> generators, Point base);

  std::size_t degree() const { return degree_; }
  std::size_t rank() const { return gens_.size(); }
  Point base() const { return base_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const Perm& generator(std::size_t g) const { return gens_[g]; }
  const Perm& generator_inverse(std::size_t g) const { return inverses_[g]; }

  std::size_t edge_count() const { return degree_ * gens_.size(); }
  std::size_t edge(Point v, std::size_t g) const { return static_cast<std::size_t>(v) * gens_.size() + g; }
  Point edge_source(std::size_t e) const { return static_cast<Point>(e / gens_.size()); }
  std::size_t edge_generator(std::size_t e) const { return e % gens_.size(); }
  Point edge_target(std::size_t e) const { return gens_[edge_generator(e)](edge_source(e)); }

  bool is_tree_edge(std::size_t e) const { return nontree_index_[e] < 0; }
  const std::vector<std::size_t>& nontree_edges() const { return nontree_; }
  // Position of e among the non-tree edges, or -1 for a tree edge.
  std::ptrdiff_t nontree_index(std::size_t e) const { return nontree_index_[e]; }

  Point step(Point v, Letter l) const {
    std::size_t g = letter_gen(l);
    return l > 0 ? gens_[g](v) : inverses_[g](v);
  }
  // Edge crossed when reading l at v, and the crossing sign.
  std::size_t step_edge(Point v, Letter l) const {
    std::size_t g = letter_gen(l);
    return l > 0 ? edge(v, g) : edge(inverses_[g](v), g);
  }
  Point walk(Point v, const std::vector<Letter>& w) const;

  // Word read along the tree from the base point to v.
  std::vector<Letter> tree_word(Point v) const;
  std::size_t depth(Point v) const { return depth_[v]; }
  // Letter on the tree edge from the parent of v to v (0 at the base).
  Letter parent_letter(Point v) const { return parent_letter_[v]; }
  Point parent(Point v) const { return parent_[v]; }

  // Reidemeister-Schreier rewriting: the path reading w from v, recorded as
  // the sequence of non-tree edges crossed (letter k+1 for edge index k,
  // negated when crossed backwards), freely reduced.
  std::vector<Letter> rewrite(Point v, const std::vector<Letter>& w) const;

 private:
  std::size_t degree_ = 0;
  Point base_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> inverses_;
  std::vector<Point> parent_;
  std::vector<Letter> parent_letter_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> nontree_;
  std::vector<std::ptrdiff_t> nontree_index_;
};

}  // namespace vb1
