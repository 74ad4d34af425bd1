#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vb1/cover.hpp"
#include "vb1/fp_group.hpp"
#include "vb1/free_aut.hpp"
#include "vb1/matrix.hpp"

namespace vb1 {

// Rational first homology of a cover, in the basis of fundamental cycles of
// the Schreier spanning tree: coordinate i is the signed count of the i-th
// non-tree edge.
class H1Basis {
 public:
  explicit H1Basis(PermCover cover);

  const PermCover& cover() const { return cover_; }
  std::size_t dimension() const { return cover_.graph().nontree_edges().size(); }

  IntVector coordinates(const std::vector<long long>& chain) const;
  IntVector coordinates(const CoverLoop& loop) const;
  RatVector coordinates(const RatVector& chain) const;

  // The basis loop of non-tree edge i, based at the base sheet.
  CoverLoop basis_loop(std::size_t i) const;

  // One class per puncture lift: the boundary word read degree times.
  const std::vector<IntVector>& boundary_classes() const { return boundary_; }
  const RationalSubspace& boundary_span() const { return boundary_span_; }
  // dim H1(cover) / <boundary classes>; equals 2 * genus.
  std::size_t filled_dimension() const { return dimension() - boundary_span_.dimension(); }
  bool is_peripheral(const RatVector& coords) const { return boundary_span_.contains(coords); }

  // Intersection form on the basis, computed on demand (quadratic size).
  IntMatrix intersection_form() const;
  // I(a, b) for rational classes.
  Rational pairing(const RatVector& a, const RatVector& b) const;
  // Edge functional of a rational class: sum of a_i * I(basis_i, -).
  RatVector functional(const RatVector& coords) const;
  // Chain (per edge) of a rational class.
  RatVector chain(const RatVector& coords) const;

 private:
  PermCover cover_;
  std::vector<IntVector> boundary_;
  RationalSubspace boundary_span_;
};

// The lift of f determined by lambda, acting on H1 of the cover.
// Keeps a pointer to the basis, which must outlive it.
class HomologyAction {
 public:
  // Throws InvalidArgument when lambda is not an intertwiner for f.
  HomologyAction(const H1Basis& basis, const FreeAut& f, const Perm& lambda);

  const H1Basis& basis() const { return *basis_; }
  const Perm& lift() const { return lift_; }
  // Column j holds the image of basis class j.
  const IntMatrix& on_h1() const { return matrix_; }
  // dim of the classes fixed modulo the boundary span: h - rank[A - I | B].
  std::size_t fixed_dimension() const { return fixed_dimension_; }
  bool fixes(const RatVector& coords) const;

  // Action on H1 / <boundary classes> in the basis of free coordinates of
  // the boundary span, and the induced intersection form there.
  RatMatrix filled_action() const;
  RatMatrix filled_form() const;
  // A^T J A = J on the filled quotient; exact.
  bool is_symplectic() const;
  // Every boundary class maps into the boundary span.
  bool preserves_boundary() const;

 private:
  const H1Basis* basis_;
  Perm lift_;
  IntMatrix matrix_;
  std::size_t fixed_dimension_ = 0;
};

HomologyAction h1_action(const H1Basis& basis, const FreeAut& f, const Perm& lambda);

// 1 + dim of the fixed space on H1 of the filled cover.  Throws
// ComputationError when the cover does not fill at cone order n.
std::size_t betti_mapping_torus(const HomologyAction& a, unsigned n);

// Presentations with more generators skip the Smith form; b1 then comes
// from the exact rank of the relation matrix alone.
inline constexpr std::size_t kOracleTorsionLimit = 160;

struct OracleResult {
  std::size_t betti = 0;
  std::vector<Integer> torsion;  // empty above kOracleTorsionLimit generators
  std::size_t generators = 0;
  std::size_t relators = 0;
};

// b1 from the abelianized presentation of the cover's mapping torus:
// Reidemeister-Schreier generators, lifted images traced through lambda,
// cone relators from the orbifold fill.  Independent of H1Basis.
OracleResult betti_oracle(const PermCover& c, const FreeAut& f, const Perm& lambda, unsigned n,
                          std::size_t length_cap = kDefaultWordLengthCap);

// Cover of the unfilled surface obtained by pulling the filled cover back
// along a quotient of free groups (images of the unfilled generators).
PermCover pull_back_cover(const PermCover& filled, const FatSurface& base, const std::vector<FreeWord>& quotient);

// The loop alpha in c whose image under the filling map is alpha_plus:
// the same sheets, letters carried over by the section.  Throws
// InvalidArgument when c is not the pull-back of c_plus along quotient.
CoverLoop pullback_class(const PermCover& c_plus, const CoverLoop& alpha_plus, const PermCover& c,
                         const std::vector<FreeWord>& quotient, const std::vector<FreeWord>& section);
// Rational chain version: edges of generator g carried to the generator
// that section(g) names.
RatVector pullback_chain(const PermCover& c_plus, const RatVector& chain, const PermCover& c,
                         const std::vector<FreeWord>& section);

// A rational combination of closed loops.
struct CycleClass {
  std::vector<CoverLoop> loops;
  std::vector<Rational> multiplicities;
  RatVector coords;
};

Json cycle_class_json(const PermCover& c, const CycleClass& z);

struct FixedPairCertificate {
  CycleClass delta;
  CycleClass delta_star;
  Rational pairing;                 // I(delta, delta*), made positive
  std::vector<Rational> y_pairings; // I(delta + delta*, y_k) per y-cycle, all 0
  std::vector<Rational> y_pairings_delta;       // per y-cycle for delta alone
  std::vector<Rational> y_pairings_delta_star;  // and for delta*
  std::vector<CycleClass> family;   // row-2 loop plus its row-4 companion
  std::size_t family_rank = 0;      // rank of the family modulo boundary
  std::size_t row2_cycle_rank = 0;
  std::vector<std::vector<Rational>> family_pairing;
  bool fixed_by_twist_x = false;    // canonical lift of D_x
  bool fixed_by_twist_y4 = false;   // identity lift of D_y^4
  Json to_json(const PermCover& c) const;
};

// Searches rows 2 and 4 of a grid cover satisfying Condition I for two
// fixed non-peripheral classes with nonzero intersection.  Throws
// InvalidArgument for non-grid covers or when Condition I fails, and
// ComputationError when a row-2 loop has no companion.
FixedPairCertificate fixed_pair_search(const H1Basis& basis);

}  // namespace vb1
