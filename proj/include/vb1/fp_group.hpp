#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vb1/free_aut.hpp"
#include "vb1/free_group.hpp"
#include "vb1/matrix.hpp"
#include "vb1/perm.hpp"
#include "vb1/schreier.hpp"

namespace vb1 {

// Finitely presented group.  Relators are stored freely reduced; empty
// relators are dropped on construction.
class FPGroup {
 public:
  FPGroup() = default;
  FPGroup(Alphabet generators, std::vector<FreeWord> relators);

  const Alphabet& generators() const { return generators_; }
  const std::vector<FreeWord>& relators() const { return relators_; }
  std::size_t rank() const { return generators_.size(); }

  // One row per relator holding its exponent sums.
  IntMatrix relation_matrix() const;

  // "gens: x y t ; rels: t x T X, t y T Y"
  static FPGroup parse(std::string_view text);
  std::string to_string() const;

 private:
  Alphabet generators_;
  std::vector<FreeWord> relators_;
};

struct Abelianization {
  std::size_t betti = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
};

// Betti number and torsion from the Smith form of the relation matrix.
Abelianization abelianization(const FPGroup& g);
// Betti number alone: generators minus the exact rank of the relation
// matrix, which avoids Smith-form growth on large presentations.
std::size_t abelianization_rank(const FPGroup& g);

// A cone relator loop^order; order 1 fills the loop with a disk.
struct Cone {
  FreeWord loop;
  unsigned order = 1;
};

// <names, t | t g T = f(g) for each g, loop^order for each cone>.  The
// stable letter is named "t" (or "t_" when "t" is taken).
FPGroup mapping_torus_presentation(const FreeAut& f, const Alphabet& names, const std::vector<Cone>& cones);
// Cones on single generators: (generator index, order >= 2).
FPGroup mapping_torus_presentation(const FreeAut& f, const Alphabet& names,
                                   const std::vector<std::pair<std::size_t, unsigned>>& cone_generators);

// Adds the relators g = 1 for the listed generators and eliminates them.
FPGroup kill_generators(const FPGroup& g, const std::vector<std::size_t>& idxs);

// Applies the homomorphism generator g -> images[g] to a word.
std::vector<Letter> substitute(const std::vector<FreeWord>& images, const std::vector<Letter>& w);

// The filling quotient F(x, y, z1..z_{k-1}) -> F(x, y) that keeps puncture
// p (0-based): every other boundary word dies.  For p < k-1 it sends
// z_p -> [x,y] and the other z's to 1; for p = k-1 all z's go to 1.
std::vector<FreeWord> filling_quotient(std::size_t puncture, std::size_t k);
// The inclusion F(x, y) -> F(x, y, z1..), a section of every filling quotient.
std::vector<FreeWord> filling_section(std::size_t k);

// The induced automorphism of F(x,y) after filling every puncture except p.
// Requires f to map each boundary word to a conjugate of itself or its
// inverse (InvalidArgument otherwise); throws ComputationError when the
// result fails automorphism validation.  Certified when f is.
FreeAut theta(const FreeAut& f, std::size_t puncture, std::size_t k);

struct SubgroupPresentation {
  FPGroup group;
  SchreierGraph graph;
};

// Reidemeister-Schreier presentation of the stabilizer of the base point.
// Generators are the non-tree edges of the Schreier graph; relators are
// the rewritten conjugates of each relator at every vertex.
SubgroupPresentation subgroup_presentation(const FPGroup& g, const std::vector<Perm>& rep, Perm::Point base = 0);

// Decides triviality of a word in the free-by-cyclic group F x|_f <t>
// (generators of F, then t as the last generator) via the normal form
// u t^n.  f must be certified.
bool trivial_in_mapping_torus(const std::vector<Letter>& w, const FreeAut& f);

}  // namespace vb1
