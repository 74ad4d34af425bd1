#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "vb1/acceptance.hpp"
#include "vb1/error.hpp"
#include "vb1/fp_group.hpp"
#include "vb1/homology.hpp"
#include "vb1/rng.hpp"

using namespace vb1;

namespace {

PermCover trivial_cover(std::size_t k = 1) {
  FatSurface s = FatSurface::k_punctured_torus(k);
  return build_cover(s, std::vector<Perm>(s.rank(), Perm::identity(1)));
}

oracle::Grid grid(const IntMatrix& m) {
  oracle::Grid g(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

RatVector unit(std::size_t n, std::size_t i) {
  RatVector v(n);
  v[i] = 1;
  return v;
}

}  // namespace

TEST_SUITE("first homology") {
  TEST_CASE("dimensions on random covers") {
    Rng rng(53);
    for (int trial = 0; trial < 30; ++trial) {
      PermCover c = random_torus_cover(rng, 8);
      H1Basis basis(c);
      CHECK(basis.dimension() == c.degree() + 1);
      CHECK(basis.filled_dimension() == 2 * c.genus());
      CHECK(basis.boundary_span().dimension() == c.punctures().size() - 1);
      // The filled intersection form is nondegenerate.
      HomologyAction id(basis, FreeAut::identity(2), Perm::identity(c.degree()));
      RatMatrix j = id.filled_form();
      CHECK(rank(j) == basis.filled_dimension());
      CHECK(j.transpose() == RatMatrix(j.rows(), j.cols()) - j);
    }
  }

  TEST_CASE("intersection form is antisymmetric and kills boundary classes") {
    H1Basis basis(figure_two_cover());
    IntMatrix j = basis.intersection_form();
    CHECK(j.transpose() == IntMatrix(j.rows(), j.cols()) - j);
    for (const auto& b : basis.boundary_classes()) {
      RatVector rb = to_rational(b);
      for (std::size_t i = 0; i < basis.dimension(); ++i) CHECK(basis.pairing(rb, unit(basis.dimension(), i)) == 0);
    }
  }

  TEST_CASE("coordinates of basis loops are unit vectors") {
    H1Basis basis(figure_two_cover());
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
      IntVector v = basis.coordinates(basis.basis_loop(i));
      for (std::size_t j = 0; j < v.size(); ++j) CHECK(v[j] == (i == j ? 1 : 0));
    }
  }
}

TEST_SUITE("homology actions") {
  TEST_CASE("identity acts as the identity") {
    H1Basis basis(figure_two_cover());
    HomologyAction a(basis, FreeAut::identity(2), Perm::identity(16));
    CHECK(a.on_h1() == IntMatrix::identity(basis.dimension()));
    CHECK(a.fixed_dimension() == 10);
    CHECK(betti_mapping_torus(a, 2) == 11);
    CHECK_THROWS_AS(HomologyAction(basis, twist_y(), Perm::identity(16)), InvalidArgument);
  }

  TEST_CASE("trivial cover of T(2)") {
    H1Basis basis(trivial_cover());
    HomologyAction id(basis, FreeAut::identity(2), Perm::identity(1));
    CHECK(betti_mapping_torus(id, 2) == 3);
    CHECK(betti_oracle(basis.cover(), FreeAut::identity(2), Perm::identity(1), 2).betti == 3);
    FreeAut f = parse_twist_word("Dx Dy^4");
    CHECK(betti_mapping_torus(HomologyAction(basis, f, Perm::identity(1)), 2) == 1);
  }

  TEST_CASE("canonical Dx lift fixes every row 2 and row 4 class") {
    PermCover fig = figure_two_cover();
    H1Basis basis(fig);
    HomologyAction a(basis, twist_x(), canonical_twist_x_lift(fig));
    for (std::uint32_t row : {1u, 3u}) {
      for (std::uint32_t j = 0; j < 4; ++j) {
        // The x-edge leaving sheet (row, j) closes into row-internal loops.
        CoverLoop loop{row * 4 + j, {1, 1, 1, 1}};
        REQUIRE(fig.is_closed(loop));
        CHECK(a.fixes(to_rational(basis.coordinates(loop))));
      }
    }
  }

  TEST_CASE("random lifts: symplectic, boundary preserving, formula equals oracle") {
    Rng rng(59);
    std::size_t tested = 0;
    while (tested < 30) {
      PermCover c = random_torus_cover(rng, 7, 2);
      FreeAut f = parse_twist_word(random_twist_word(rng, 5));
      auto m = minimal_lifting_power(c, f, 24);
      if (!m) continue;
      FreeAut fm;
      try {
        fm = f.power(*m, 100000);
      } catch (const ComputationError&) {
        continue;
      }
      H1Basis basis(c);
      for (const auto& lambda : find_lifts(c, fm)) {
        HomologyAction a(basis, fm, lambda);
        CHECK(a.is_symplectic());
        CHECK(a.preserves_boundary());
        // dim fix modulo boundary = h - rank [A - I | boundary classes].
        IntMatrix shifted = a.on_h1() - IntMatrix::identity(basis.dimension());
        IntMatrix boundary(basis.dimension(), basis.boundary_classes().size());
        for (std::size_t b = 0; b < basis.boundary_classes().size(); ++b) {
          boundary.set_column(b, basis.boundary_classes()[b]);
        }
        std::size_t expected = basis.dimension() - oracle::rank(grid(hconcat(shifted, boundary)));
        CHECK(a.fixed_dimension() == expected);
        CHECK(betti_mapping_torus(a, 2) == expected + 1);
        CHECK(betti_oracle(c, fm, lambda, 2).betti == expected + 1);
      }
      ++tested;
    }
  }

  TEST_CASE("fixed dimension is invariant under deck conjugation") {
    Rng rng(61);
    std::size_t tested = 0;
    while (tested < 15) {
      PermCover c = random_torus_cover(rng, 6);
      FreeAut f = parse_twist_word(random_twist_word(rng, 4));
      auto m = minimal_lifting_power(c, f, 12);
      if (!m) continue;
      FreeAut fm = f.power(*m);
      H1Basis basis(c);
      auto deck = find_lifts(c, FreeAut::identity(2));
      for (const auto& lambda : find_lifts(c, fm)) {
        std::size_t dim = HomologyAction(basis, fm, lambda).fixed_dimension();
        for (const auto& d : deck) {
          Perm conjugated = d.inverse() * lambda * d;
          REQUIRE(is_lift(c, fm, conjugated));
          CHECK(HomologyAction(basis, fm, conjugated).fixed_dimension() == dim);
        }
      }
      ++tested;
    }
  }

  TEST_CASE("classes missing every lift of y are fixed by the lift of Dy^4") {
    PermCover fig = figure_two_cover();
    H1Basis basis(fig);
    FreeAut dy4 = twist_y().power(4);
    REQUIRE(is_lift(fig, dy4, Perm::identity(16)));
    HomologyAction a(basis, dy4, Perm::identity(16));
    std::size_t h = basis.dimension();
    // Functionals I(-, y_j) as rows; their common kernel.
    RatMatrix rows(0, h);
    std::vector<RatVector> functionals;
    for (Perm::Point s = 0; s < 16; s += 1) {
      CoverLoop y{s, {2, 2, 2, 2}};
      if (!fig.is_closed(y)) continue;
      RatVector ycoords = to_rational(basis.coordinates(y));
      RatVector f(h);
      for (std::size_t i = 0; i < h; ++i) f[i] = basis.pairing(unit(h, i), ycoords);
      functionals.push_back(f);
    }
    RatMatrix fm(functionals.size(), h);
    for (std::size_t r = 0; r < functionals.size(); ++r)
      for (std::size_t i = 0; i < h; ++i) fm(r, i) = functionals[r][i];
    auto kernel = kernel_basis(fm);
    CHECK_FALSE(kernel.empty());
    for (const auto& v : kernel) CHECK(a.fixes(v));
  }
}

TEST_SUITE("fixed pair") {
  TEST_CASE("figure-two cover pair") {
    H1Basis basis(figure_two_cover());
    FixedPairCertificate cert = fixed_pair_search(basis);
    CHECK(cert.pairing == 2);
    for (const auto& y : cert.y_pairings) CHECK(y == 0);
    CHECK(cert.fixed_by_twist_x);
    CHECK(cert.fixed_by_twist_y4);
    CHECK_FALSE(basis.is_peripheral(cert.delta.coords));
    CHECK_FALSE(basis.is_peripheral(cert.delta_star.coords));
    CHECK(basis.pairing(cert.delta.coords, cert.delta_star.coords) == cert.pairing);
    // The loops really represent the reported classes.
    RatVector sum(basis.dimension());
    for (std::size_t i = 0; i < cert.delta.loops.size(); ++i) {
      IntVector v = basis.coordinates(cert.delta.loops[i]);
      for (std::size_t j = 0; j < v.size(); ++j) sum[j] += cert.delta.multiplicities[i] * Rational(v[j]);
    }
    CHECK(sum == cert.delta.coords);
  }

  TEST_CASE("non-grid covers are rejected") {
    H1Basis basis(build_cover(FatSurface::punctured_torus(), {Perm::parse("(1 2)"), Perm::parse("(1 2)")}));
    CHECK_THROWS_AS(fixed_pair_search(basis), InvalidArgument);
  }
}

TEST_SUITE("pull-backs") {
  TEST_CASE("degree one: the loop is unchanged") {
    PermCover plus = trivial_cover(1);
    PermCover c = pull_back_cover(plus, FatSurface::k_punctured_torus(2), filling_quotient(1, 2));
    CHECK(c.degree() == 1);
    CoverLoop alpha{0, {1, 2, -1}};
    CoverLoop back = pullback_class(plus, alpha, c, filling_quotient(1, 2), filling_section(2));
    CHECK(back.letters == alpha.letters);
  }

  TEST_CASE("figure-two cover pulled back to the twice-punctured torus") {
    PermCover plus = figure_two_cover();
    for (std::size_t p = 0; p < 2; ++p) {
      auto quotient = filling_quotient(p, 2);
      PermCover c = pull_back_cover(plus, FatSurface::k_punctured_torus(2), quotient);
      CHECK(c.degree() == 16);
      H1Basis basis(plus), pulled(c);
      FixedPairCertificate cert = fixed_pair_search(basis);
      for (const auto& loop : cert.delta.loops) {
        CoverLoop back = pullback_class(plus, loop, c, quotient, filling_section(2));
        CHECK(c.is_closed(back));
        CHECK(basis.coordinates(loop) == basis.coordinates(CoverLoop{back.start, substitute(quotient, back.letters)}));
      }
      // Intersection numbers survive the pull-back.
      CoverLoop a = pullback_class(plus, cert.delta.loops[0], c, quotient, filling_section(2));
      CoverLoop b = pullback_class(plus, cert.delta_star.loops[0], c, quotient, filling_section(2));
      CHECK(intersection_number(c, a, b) == intersection_number(plus, cert.delta.loops[0], cert.delta_star.loops[0]));
    }
  }
}
