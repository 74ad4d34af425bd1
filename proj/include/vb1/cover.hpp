#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vb1/free_aut.hpp"
#include "vb1/perm.hpp"
#include "vb1/schreier.hpp"
#include "vb1/surface.hpp"

namespace vb1 {

using Json = nlohmann::ordered_json;

// Row data of a grid cover: sheet (i, j) with row i in 0..3 and column
// j in 0..r-1 is sheet i*r + j.
struct GridData {
  std::uint32_t r = 0;
  std::array<Perm, 4> sigma;
};

// One lift of a base puncture: a cycle of the boundary word's monodromy.
struct PunctureLift {
  std::size_t boundary = 0;            // index of the base boundary word
  std::vector<Perm::Point> cycle;      // sheets, starting at the least one
  std::uint32_t degree = 0;            // unwrapping degree = cycle length
};

// A closed edge path: start sheet and the base letters read along it.
// The letters need not be freely reduced.
struct CoverLoop {
  Perm::Point start = 0;
  std::vector<Letter> letters;
};

// Finite cover of a FatSurface given by a transitive right action of its
// free group on sheets, with a fixed Schreier graph and spanning tree.
class PermCover {
 public:
  PermCover() = default;
  // Throws InvalidArgument on degree mismatch or a non-transitive action.
  PermCover(FatSurface base, std::vector<Perm> perms, Perm::Point basepoint = 0);

  const FatSurface& base() const { return base_; }
  std::size_t degree() const { return graph_.degree(); }
  std::size_t rank() const { return graph_.rank(); }
  const std::vector<Perm>& perms() const { return graph_.generators(); }
  Perm::Point basepoint() const { return graph_.base(); }
  const SchreierGraph& graph() const { return graph_; }
  const std::vector<PunctureLift>& punctures() const { return punctures_; }
  long euler_characteristic() const { return static_cast<long>(degree()) * base_.euler_characteristic(); }
  std::size_t genus() const { return genus_; }
  const std::optional<GridData>& grid() const { return grid_; }

  Perm word_perm(const std::vector<Letter>& w) const;
  bool is_closed(const CoverLoop& loop) const;
  // Edge carrying the half-edge h (FatSurface numbering) at sheet v.  Even
  // h leave v along that edge, odd h arrive at v.
  std::size_t half_edge_edge(Perm::Point v, std::uint32_t h) const;

 private:
  friend PermCover grid_cover(std::uint32_t r, const std::array<Perm, 4>& sigma);

  FatSurface base_;
  SchreierGraph graph_;
  std::vector<PunctureLift> punctures_;
  std::size_t genus_ = 0;
  std::optional<GridData> grid_;
};

PermCover build_cover(const FatSurface& base, std::vector<Perm> perms, Perm::Point basepoint = 0);

// Cover of the punctured torus with phi(y): (i,j) -> (i+1 mod 4, j) and
// phi(x): (i,j) -> (i, sigma_i(j)).
PermCover grid_cover(std::uint32_t r, const std::array<Perm, 4>& sigma);
// The 16-sheet cover with sigma_1 = sigma_3 = (1 2 3 4), sigma_2 = sigma_4
// their inverse.
PermCover figure_two_cover();

std::vector<PunctureLift> boundary_lifts(const PermCover& c);

struct OrbifoldFill {
  unsigned n = 0;
  std::vector<unsigned> cone_orders;  // n / degree per puncture lift
  bool manifold() const;
};
// Throws ComputationError when some unwrapping degree does not divide n.
OrbifoldFill orbifold_fill(const PermCover& c, unsigned n);
// Per-base-puncture cone orders.
OrbifoldFill orbifold_fill(const PermCover& c, const std::vector<unsigned>& base_orders);

struct LiftConditions {
  bool lemma_lift = false;   // s1..si commutes with s_{i+1}, and s1..ss = 1
  bool condition_I = false;  // s2 = s1^-1, s4 = s3^-1 (four permutations)
  bool condition_II = false; // (s_i s_{i+1}^-1)^n = 1 for all i mod s
  unsigned n = 2;
};
LiftConditions check_lift_conditions(const std::vector<Perm>& sigma, unsigned n);

// All sheet bijections lambda with lambda(s . g) = lambda(s) . f(g), in
// increasing order of lambda(basepoint).  f must be certified.
std::vector<Perm> find_lifts(const PermCover& c, const FreeAut& f);
// Intertwiners from the action phi to the action rho (rho given per generator).
std::vector<Perm> find_intertwiners(const SchreierGraph& graph, const std::vector<Perm>& rho);
bool is_lift(const PermCover& c, const FreeAut& f, const Perm& lambda);
// Smallest m in 1..bound for which f^m lifts; decided on permutations
// without expanding the words of f^m.
std::optional<unsigned> minimal_lifting_power(const PermCover& c, const FreeAut& f, unsigned bound);
// The lift of D_x acting on row i by sigma_1 ... sigma_i (grid covers).
Perm canonical_twist_x_lift(const PermCover& c);

struct FiberProduct {
  PermCover cover;
  // projections[i][s] = sheet of factor i under sheet s of the product
  std::vector<std::vector<Perm::Point>> projections;
};
// Orbit of (basepoints) under the diagonal action.  Throws InvalidArgument
// when the bases differ.
FiberProduct fiber_product(const std::vector<PermCover>& factors);

// Algebraic intersection number on the closed-up cover, computed from
// corner crossings in the lifted cyclic order.  Throws InvalidArgument when
// a loop is not closed.
long long intersection_number(const PermCover& c, const CoverLoop& a, const CoverLoop& b);
// The functional I(a, -) on 1-chains, one entry per edge of the Schreier graph.
std::vector<long long> intersection_functional(const PermCover& c, const CoverLoop& a);
// Signed edge counts of a path.
std::vector<long long> loop_chain(const PermCover& c, const CoverLoop& a);

Json loop_json(const PermCover& c, const CoverLoop& a);
Json cover_descriptor(const PermCover& c);
std::string schreier_dot(const PermCover& c);

}  // namespace vb1
