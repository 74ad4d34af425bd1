#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "vb1/acceptance.hpp"
#include "vb1/cover.hpp"
#include "vb1/error.hpp"
#include "vb1/rng.hpp"

using namespace vb1;

namespace {

std::vector<std::vector<std::size_t>> images_of(const std::vector<Perm>& perms) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& p : perms) out.emplace_back(p.images().begin(), p.images().end());
  return out;
}

// Every bijection lambda with lambda(s . g) = lambda(s) . f(g), by trying
// all d! candidates.
std::set<std::vector<std::size_t>> brute_force_lifts(const PermCover& c, const FreeAut& f) {
  auto gens = images_of(c.perms());
  std::size_t d = c.degree();
  std::vector<std::size_t> lambda(d);
  std::iota(lambda.begin(), lambda.end(), 0);
  std::set<std::vector<std::size_t>> out;
  do {
    bool ok = true;
    for (std::size_t g = 0; g < gens.size() && ok; ++g) {
      std::vector<int> image(f.image(g).letters().begin(), f.image(g).letters().end());
      for (std::size_t s = 0; s < d && ok; ++s) ok = lambda[gens[g][s]] == oracle::act(gens, lambda[s], image);
    }
    if (ok) out.insert(lambda);
  } while (std::next_permutation(lambda.begin(), lambda.end()));
  return out;
}

std::size_t boundary_cycles(const PermCover& c) {
  auto gens = images_of(c.perms());
  std::size_t total = 0;
  for (const auto& b : c.base().boundary_words()) {
    std::vector<int> word(b.letters().begin(), b.letters().end());
    std::vector<std::size_t> images(c.degree());
    for (std::size_t s = 0; s < c.degree(); ++s) images[s] = oracle::act(gens, s, word);
    total += oracle::cycle_count(images);
  }
  return total;
}

PermCover trivial_torus_cover() { return build_cover(FatSurface::punctured_torus(), {Perm::identity(1), Perm::identity(1)}); }

}  // namespace

TEST_SUITE("surfaces") {
  TEST_CASE("punctured torus") {
    FatSurface t = FatSurface::punctured_torus();
    CHECK(t.rank() == 2);
    CHECK(t.punctures() == 1);
    CHECK(t.genus() == 1);
    CHECK(t.euler_characteristic() == -1);
    auto traced = t.trace_boundary();
    REQUIRE(traced.size() == 1);
    CHECK(are_conjugate(FreeWord(traced[0]), t.boundary_words()[0]));
  }

  TEST_CASE("k-punctured tori: Euler characteristic and boundary tracing") {
    for (std::size_t k = 1; k <= 5; ++k) {
      FatSurface s = FatSurface::k_punctured_torus(k);
      CHECK(s.punctures() == k);
      CHECK(s.genus() == 1);
      CHECK(s.euler_characteristic() == 2 - 2 * 1 - static_cast<long>(k));
      auto traced = s.trace_boundary();
      REQUIRE(traced.size() == k);
      for (const auto& b : s.boundary_words()) {
        bool found = std::any_of(traced.begin(), traced.end(),
                                 [&](const auto& t) { return are_conjugate(FreeWord(t), b); });
        CHECK(found);
      }
    }
  }

  TEST_CASE("bad ribbon data is rejected") {
    CHECK_THROWS_AS(FatSurface(Alphabet::of("x y"), {parse_word("x y", Alphabet::of("x y"))}), InvalidArgument);
  }
}

TEST_SUITE("covers") {
  TEST_CASE("degree one and degree two") {
    PermCover t = trivial_torus_cover();
    CHECK(t.genus() == 1);
    CHECK(t.punctures().size() == 1);
    PermCover c = build_cover(FatSurface::punctured_torus(), {Perm::parse("(1 2)"), Perm::parse("(1 2)")});
    CHECK(c.degree() == 2);
    CHECK(c.euler_characteristic() == -2);
    CHECK(c.punctures().size() == 2);
    CHECK(c.genus() == 1);
    CHECK_THROWS_AS(build_cover(FatSurface::punctured_torus(), {Perm::identity(2), Perm::identity(2)}),
                    InvalidArgument);
  }

  TEST_CASE("grid covers") {
    PermCover fig = figure_two_cover();
    CHECK(fig.degree() == 16);
    CHECK(fig.punctures().size() == 8);
    CHECK(fig.genus() == 5);
    for (const auto& p : fig.punctures()) CHECK(p.degree == 2);
    CHECK(orbifold_fill(fig, 2).manifold());

    Perm c4 = Perm::parse("(1 2 3 4)");
    PermCover abelian = grid_cover(4, {c4, c4, c4, c4});
    CHECK(abelian.punctures().size() == 16);
    for (const auto& p : abelian.punctures()) CHECK(p.degree == 1);
    OrbifoldFill fill = orbifold_fill(abelian, 2);
    CHECK_FALSE(fill.manifold());
    CHECK(std::count(fill.cone_orders.begin(), fill.cone_orders.end(), 2u) == 16);
    CHECK(orbifold_fill(trivial_torus_cover(), 2).cone_orders == std::vector<unsigned>{2});
    CHECK_THROWS_AS(orbifold_fill(fig, 3), ComputationError);
  }

  TEST_CASE("random covers: Euler characteristic and puncture counts") {
    Rng rng(3);
    for (int trial = 0; trial < 60; ++trial) {
      PermCover c = random_torus_cover(rng, 8);
      std::size_t d = c.degree();
      CHECK(c.graph().edge_count() == 2 * d);
      CHECK(static_cast<long>(d) - static_cast<long>(c.graph().edge_count()) == c.euler_characteristic());
      CHECK(c.punctures().size() == boundary_cycles(c));
      long lhs = 2 - 2 * static_cast<long>(c.genus()) - static_cast<long>(c.punctures().size());
      CHECK(lhs == c.euler_characteristic());
      std::size_t unwrapped = 0;
      for (const auto& p : c.punctures()) unwrapped += p.degree;
      CHECK(unwrapped == d);
    }
  }
}

TEST_SUITE("lift conditions") {
  TEST_CASE("small tuples") {
    Perm c4 = Perm::parse("(1 2 3 4)");
    LiftConditions fig = check_lift_conditions({c4, c4.inverse(), c4, c4.inverse()}, 2);
    CHECK(fig.lemma_lift);
    CHECK(fig.condition_I);
    CHECK(fig.condition_II);
    std::vector<Perm> ids(4, Perm::identity(3));
    for (unsigned n : {2u, 3u, 7u}) {
      auto id = check_lift_conditions(ids, n);
      CHECK(id.lemma_lift);
      CHECK(id.condition_II);
    }
    auto bad = check_lift_conditions({Perm::parse("(1 2)", 3), Perm::parse("(1 3)"), Perm::identity(3), Perm::identity(3)}, 2);
    CHECK_FALSE(bad.lemma_lift);
  }

  TEST_CASE("condition II with n = 2 bounds the unwrapping degrees by 2") {
    Rng rng(19);
    for (int trial = 0, tested = 0; tested < 80; ++trial) {
      std::size_t r = 1 + rng.below(5);
      std::array<Perm, 4> sigma;
      for (auto& s : sigma) s = random_perm(rng, r);
      if (trial % 2 == 0) {
        sigma[1] = sigma[0].inverse();
        sigma[3] = sigma[2].inverse();
      }
      // Skip tuples whose grid action is not transitive.
      std::vector<Perm> rows(sigma.begin(), sigma.end());
      if (orbits(rows, r).size() > 1) continue;
      ++tested;
      PermCover c = grid_cover(static_cast<std::uint32_t>(r), sigma);
      bool at_most_two = std::all_of(c.punctures().begin(), c.punctures().end(),
                                     [](const PunctureLift& p) { return p.degree <= 2; });
      CHECK(check_lift_conditions({sigma.begin(), sigma.end()}, 2).condition_II == at_most_two);
    }
  }
}

TEST_SUITE("lifts") {
  TEST_CASE("degree one covers lift everything once") {
    Rng rng(1);
    for (int trial = 0; trial < 10; ++trial) {
      FreeAut f = parse_twist_word(random_twist_word(rng, 5));
      CHECK(find_lifts(trivial_torus_cover(), f).size() == 1);
      CHECK(minimal_lifting_power(trivial_torus_cover(), f, 64) == 1u);
    }
  }

  TEST_CASE("figure-two cover: twists about x and y") {
    PermCover fig = figure_two_cover();
    auto dx = find_lifts(fig, twist_x());
    REQUIRE_FALSE(dx.empty());
    Perm canonical = canonical_twist_x_lift(fig);
    CHECK(std::find(dx.begin(), dx.end(), canonical) != dx.end());
    for (std::uint32_t j = 0; j < 4; ++j) {
      CHECK(canonical(1 * 4 + j) == 1 * 4 + j);
      CHECK(canonical(3 * 4 + j) == 3 * 4 + j);
    }
    CHECK_FALSE(find_lifts(fig, twist_y().power(4)).empty());
    for (const auto& l : dx) CHECK(is_lift(fig, twist_x(), l));
  }

  TEST_CASE("find_lifts equals brute force over all bijections") {
    Rng rng(29);
    for (int trial = 0; trial < 40; ++trial) {
      PermCover c = random_torus_cover(rng, 6);
      FreeAut f = parse_twist_word(random_twist_word(rng, 4));
      std::set<std::vector<std::size_t>> found;
      for (const auto& l : find_lifts(c, f)) found.emplace(l.images().begin(), l.images().end());
      CHECK(found == brute_force_lifts(c, f));
      auto m = minimal_lifting_power(c, f, 12);
      if (m) {
        CHECK_FALSE(find_lifts(c, f.power(*m)).empty());
        for (unsigned e = 1; e < *m; ++e) CHECK(find_lifts(c, f.power(e)).empty());
      }
    }
  }

  TEST_CASE("lemma tuples lift Dx with the canonical action on rows") {
    Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
      std::array<Perm, 4> sigma = random_lifting_tuple(rng, 8);
      REQUIRE(check_lift_conditions({sigma.begin(), sigma.end()}, 2).lemma_lift);
      PermCover c = grid_cover(static_cast<std::uint32_t>(sigma[0].degree()), sigma);
      auto lifts = find_lifts(c, twist_x());
      REQUIRE_FALSE(lifts.empty());
      CHECK(is_lift(c, twist_x(), canonical_twist_x_lift(c)));
    }
  }
}

TEST_SUITE("fiber products") {
  TEST_CASE("with itself and with the trivial cover") {
    PermCover fig = figure_two_cover();
    CHECK(fiber_product({fig, fig}).cover.degree() == 16);
    PermCover one = build_cover(FatSurface::punctured_torus(), {Perm::identity(1), Perm::identity(1)});
    CHECK(fiber_product({fig, one}).cover.degree() == 16);
  }

  TEST_CASE("projections are equivariant surjections") {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
      PermCover a = random_torus_cover(rng, 5), b = random_torus_cover(rng, 5);
      FiberProduct p = fiber_product({a, b});
      const PermCover& c = p.cover;
      std::vector<const PermCover*> factors{&a, &b};
      for (std::size_t i = 0; i < 2; ++i) {
        std::set<Perm::Point> hit(p.projections[i].begin(), p.projections[i].end());
        CHECK(hit.size() == factors[i]->degree());
        for (std::size_t s = 0; s < c.degree(); ++s) {
          for (std::size_t g = 0; g < 2; ++g) {
            CHECK(p.projections[i][c.perms()[g](static_cast<Perm::Point>(s))] ==
                  factors[i]->perms()[g](p.projections[i][s]));
          }
        }
      }
    }
  }
}

TEST_SUITE("intersection numbers") {
  TEST_CASE("dual curves on the base torus") {
    PermCover t = build_cover(FatSurface::punctured_torus(), {Perm::identity(1), Perm::identity(1)});
    CoverLoop x{0, {1}}, y{0, {2}};
    CHECK(std::abs(intersection_number(t, x, y)) == 1);
    CHECK(intersection_number(t, x, y) == -intersection_number(t, y, x));
    CHECK(intersection_number(t, x, x) == 0);
    CHECK_THROWS_AS(intersection_number(figure_two_cover(), CoverLoop{0, {1}}, CoverLoop{0, {2}}),
                    InvalidArgument);
  }

  TEST_CASE("antisymmetric, additive, invariant under retraversal") {
    Rng rng(47);
    for (int trial = 0; trial < 30; ++trial) {
      PermCover c = random_torus_cover(rng, 6);
      // A random word read from a random sheet, repeated until it closes.
      auto closed_loop = [&]() {
        std::vector<Letter> w;
        std::size_t len = 1 + rng.below(8);
        for (std::size_t i = 0; i < len; ++i) {
          w.push_back((rng.coin() ? 1 : -1) * static_cast<Letter>(1 + rng.below(2)));
        }
        Perm::Point start = static_cast<Perm::Point>(rng.below(c.degree()));
        Perm p = c.word_perm(w);
        CoverLoop loop{start, {}};
        Perm::Point s = start;
        do {
          loop.letters.insert(loop.letters.end(), w.begin(), w.end());
          s = p(s);
        } while (s != start);
        return loop;
      };
      CoverLoop a = closed_loop(), b = closed_loop(), e = closed_loop();
      CHECK(intersection_number(c, a, a) == 0);
      CHECK(intersection_number(c, a, b) == -intersection_number(c, b, a));
      // Backtracking excursions do not change the class.
      CoverLoop a2 = a;
      a2.letters.insert(a2.letters.begin(), {1, 2, -2, -1});
      CHECK(intersection_number(c, a2, b) == intersection_number(c, a, b));
      // Concatenating loops based at the same sheet adds.
      if (a.start == e.start) {
        CoverLoop ae{a.start, a.letters};
        ae.letters.insert(ae.letters.end(), e.letters.begin(), e.letters.end());
        CHECK(intersection_number(c, ae, b) == intersection_number(c, a, b) + intersection_number(c, e, b));
      }
    }
  }
}
