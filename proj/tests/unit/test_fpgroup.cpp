#include "doctest.h"
#include "oracles.hpp"
#include "vb1/acceptance.hpp"
#include "vb1/error.hpp"
#include "vb1/fp_group.hpp"
#include "vb1/rng.hpp"

using namespace vb1;

namespace {

// Exponent-sum matrix built directly from the relator letters.
oracle::Grid exponent_grid(const FPGroup& g) {
  oracle::Grid out;
  for (const auto& r : g.relators()) {
    std::vector<Integer> row(g.rank());
    for (Letter l : r.letters()) row[letter_gen(l)] += l > 0 ? 1 : -1;
    out.push_back(row);
  }
  return out;
}

std::size_t betti_by_oracle(const FPGroup& g) {
  return g.relators().empty() ? g.rank() : g.rank() - oracle::rank(exponent_grid(g));
}

}  // namespace

TEST_SUITE("presentations") {
  TEST_CASE("parse and print") {
    FPGroup g = FPGroup::parse("gens: x y t ; rels: t x T X, t y T Y");
    CHECK(g.rank() == 3);
    CHECK(g.relators().size() == 2);
    CHECK(FPGroup::parse(g.to_string()).relators() == g.relators());
    CHECK(FPGroup::parse("gens: x ; rels: x X").relators().empty());
    CHECK_THROWS_AS(FPGroup::parse("gens x y"), ParseError);
    CHECK_THROWS_AS(FPGroup::parse("gens: x ; rels: y"), ParseError);
  }

  TEST_CASE("abelianization ranks") {
    CHECK(abelianization(FPGroup(Alphabet::of("x y"), {})).betti == 2);
    Abelianization a = abelianization(FPGroup::parse("gens: x y ; rels: x^2, y^3"));
    CHECK(a.betti == 0);
    CHECK(a.torsion == std::vector<Integer>{6});
    CHECK(abelianization_rank(FPGroup::parse("gens: x y t ; rels: t x T X, t y T Y")) == 3);
  }

  TEST_CASE("mapping tori of surface automorphisms") {
    Alphabet xy = surface_alphabet(1);
    CHECK(abelianization(mapping_torus_presentation(FreeAut::identity(2), xy, std::vector<Cone>{})).betti == 3);
    CHECK(abelianization(mapping_torus_presentation(parse_twist_word("Dx Dy^4"), xy, std::vector<Cone>{})).betti == 1);
    // Identity on F(x, y, z1) with the cone z1^2: z1 dies over Q.
    FPGroup coned = mapping_torus_presentation(FreeAut::identity(3), surface_alphabet(2),
                                               std::vector<std::pair<std::size_t, unsigned>>{{2, 2}});
    Abelianization ab = abelianization(coned);
    CHECK(ab.betti == 3);
    CHECK(ab.torsion == std::vector<Integer>{2});
    CHECK_THROWS_AS(mapping_torus_presentation(FreeAut::identity(2), xy,
                                               std::vector<std::pair<std::size_t, unsigned>>{{0, 1}}),
                    InvalidArgument);
    CHECK_THROWS_AS(mapping_torus_presentation(FreeAut::identity(2), xy,
                                               std::vector<std::pair<std::size_t, unsigned>>{{5, 2}}),
                    InvalidArgument);
  }

  TEST_CASE("b1 of mapping tori of twist words matches 1 + dim fix") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
      FreeAut f = parse_twist_word(random_twist_word(rng, 6));
      FPGroup g = mapping_torus_presentation(f, surface_alphabet(1), std::vector<Cone>{});
      IntMatrix shifted = f.abelianized() - IntMatrix::identity(2);
      oracle::Grid s{{shifted(0, 0), shifted(0, 1)}, {shifted(1, 0), shifted(1, 1)}};
      std::size_t expected = 1 + 2 - oracle::rank(s);
      CHECK(abelianization(g).betti == expected);
      CHECK(abelianization_rank(g) == expected);
      CHECK(betti_by_oracle(g) == expected);
    }
  }
}

TEST_SUITE("killing generators and theta") {
  TEST_CASE("killing a free generator") {
    FPGroup g = kill_generators(FPGroup(Alphabet::of("x y"), {}), {1});
    CHECK(g.rank() == 1);
    CHECK(abelianization(g).betti == 1);
  }

  TEST_CASE("theta of the identity is the identity") {
    for (std::size_t k = 1; k <= 3; ++k)
      for (std::size_t p = 0; p < k; ++p) CHECK(theta(FreeAut::identity(k + 1), p, k).is_identity());
  }

  TEST_CASE("theta of twists about x and y") {
    for (std::size_t p = 0; p < 3; ++p) {
      CHECK(theta(twist_x(3), p, 3) == twist_x());
      CHECK(theta(twist_y(3), p, 3) == twist_y());
    }
    CHECK_THROWS_AS(theta(parse_automorphism("z1 -> z1 z2 Z1; z2 -> z1", surface_alphabet(3)), 0, 3),
                    InvalidArgument);
  }

  TEST_CASE("surjections onto quotients do not raise b1") {
    Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
      FreeAut f = parse_twist_word(random_twist_word(rng, 5, true), 2);
      auto power = f;
      if (!fixes_punctures(f, 2)) power = f.power(2);
      FPGroup gamma = mapping_torus_presentation(power, surface_alphabet(2), std::vector<Cone>{});
      FPGroup killed = kill_generators(gamma, {2});
      CHECK(betti_by_oracle(gamma) >= betti_by_oracle(killed));
      CHECK(abelianization(gamma).betti >= abelianization(killed).betti);
    }
  }
}

TEST_SUITE("subgroup presentations") {
  TEST_CASE("Nielsen-Schreier rank") {
    FPGroup free2(Alphabet::of("x y"), {});
    auto sub = subgroup_presentation(free2, {Perm::parse("(1 2)"), Perm::identity(2)});
    CHECK(sub.group.rank() == 3);
    CHECK(sub.group.relators().empty());
    auto same = subgroup_presentation(free2, {Perm::identity(1), Perm::identity(1)});
    CHECK(same.group.rank() == 2);
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
      PermCover c = random_torus_cover(rng, 7);
      auto s = subgroup_presentation(free2, c.perms());
      CHECK(s.group.rank() == c.degree() + 1);
    }
  }

  TEST_CASE("representations must kill the relators and be transitive") {
    FPGroup g = FPGroup::parse("gens: x y ; rels: x^2");
    CHECK_THROWS_AS(subgroup_presentation(g, {Perm::parse("(1 2 3)"), Perm::identity(3)}), InvalidArgument);
    CHECK_THROWS_AS(subgroup_presentation(g, {Perm::identity(2), Perm::identity(2)}), InvalidArgument);
  }

  TEST_CASE("finite-index subgroups of mapping tori have b1 at least that of the group") {
    Rng rng(13);
    for (int trial = 0; trial < 15; ++trial) {
      FreeAut f = parse_twist_word(random_twist_word(rng, 4));
      FPGroup g = mapping_torus_presentation(f, surface_alphabet(1), std::vector<Cone>{});
      // Quotient through t -> a cyclic shift, F(x, y) -> 1.
      std::uint32_t d = 2 + static_cast<std::uint32_t>(rng.below(4));
      std::vector<Perm::Point> shift(d);
      for (std::uint32_t i = 0; i < d; ++i) shift[i] = (i + 1) % d;
      auto sub = subgroup_presentation(g, {Perm::identity(d), Perm::identity(d), Perm(shift)});
      CHECK(betti_by_oracle(sub.group) >= betti_by_oracle(g));
    }
  }
}

TEST_SUITE("mapping torus word problem") {
  TEST_CASE("relators and their conjugates are trivial") {
    FreeAut f = parse_twist_word("Dx Dy^4");
    FPGroup g = mapping_torus_presentation(f, surface_alphabet(1), std::vector<Cone>{});
    for (const auto& r : g.relators()) CHECK(trivial_in_mapping_torus(r.letters(), f));
    CHECK_FALSE(trivial_in_mapping_torus({1}, f));
    CHECK_FALSE(trivial_in_mapping_torus({3}, f));
    // t x T = f(x) = x y X Y ... checked as a word: t x T f(x)^-1.
    std::vector<Letter> w{3, 1, -3};
    auto fx = f.image(0).inverse().letters();
    w.insert(w.end(), fx.begin(), fx.end());
    CHECK(trivial_in_mapping_torus(w, f));
  }
}
