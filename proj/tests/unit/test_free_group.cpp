#include "doctest.h"
#include "oracles.hpp"
#include "vb1/acceptance.hpp"
#include "vb1/error.hpp"
#include "vb1/free_aut.hpp"
#include "vb1/free_group.hpp"
#include "vb1/rng.hpp"

using namespace vb1;

namespace {

const Alphabet kXY = Alphabet::of("x y");

FreeWord w(std::string_view text) { return parse_word(text, kXY); }

std::vector<Letter> random_letters(Rng& rng, std::size_t rank, std::size_t length) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < length; ++i) {
    Letter l = gen_letter(rng.below(rank));
    out.push_back(rng.coin() ? l : -l);
  }
  return out;
}

}  // namespace

TEST_SUITE("free words") {
  TEST_CASE("parsing and printing") {
    CHECK(format_word(w("x y X Y"), kXY) == "x y X Y");
    CHECK(w("xyXY") == w("x*y*X*Y"));
    CHECK(w("x^3 y^-2") == w("x x x Y Y"));
    CHECK(w("1").empty());
    CHECK(w("").empty());
    CHECK(w("x X y").length() == 1);
    CHECK_THROWS_AS(w("q"), ParseError);
    CHECK_THROWS_AS(w("x^"), ParseError);
  }

  TEST_CASE("free reduction agrees with a stack reduction") {
    Rng rng(2);
    for (int trial = 0; trial < 300; ++trial) {
      auto letters = random_letters(rng, 3, rng.below(20));
      FreeWord word(letters);
      CHECK(word.letters() == oracle::reduce(letters));
      CHECK((word * word.inverse()).empty());
      CHECK(word.pow(3) == word * word * word);
    }
  }

  TEST_CASE("conjugacy") {
    CHECK(are_conjugate(w("x y X Y"), w("y X Y x")));
    CHECK(are_conjugate(w("x"), w("y x Y")));
    CHECK_FALSE(are_conjugate(w("x"), w("X")));
    CHECK_FALSE(are_conjugate(w("x y"), w("x x")));
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
      FreeWord a(random_letters(rng, 2, 1 + rng.below(8)));
      FreeWord c(random_letters(rng, 2, rng.below(6)));
      CHECK(are_conjugate(a, c * a * c.inverse()));
    }
  }
}

TEST_SUITE("automorphisms") {
  TEST_CASE("twists on the boundary word and on generators") {
    FreeWord boundary = surface_boundary_words(1)[0];
    CHECK(format_word(boundary, kXY) == "x y X Y");
    CHECK(twist_x().apply(boundary) == boundary);
    CHECK(twist_y().apply(boundary) == boundary);
    CHECK(twist_y().apply(w("x")) == w("x Y"));
    CHECK(twist_x().apply(w("y")) == w("y x"));
    CHECK(FreeAut::identity(2).apply(w("x y X")) == w("x y X"));
  }

  TEST_CASE("abelianized matrices") {
    CHECK(twist_x().abelianized() == IntMatrix{{1, 1}, {0, 1}});
    CHECK(twist_y().abelianized() == IntMatrix{{1, 0}, {-1, 1}});
    CHECK(twist_y().power(4).abelianized() == IntMatrix{{1, 0}, {-4, 1}});
    CHECK(compose(twist_x(), twist_y().power(4)).abelianized() == IntMatrix{{-3, 1}, {-4, 1}});
    CHECK(parse_twist_word("Dx Dy^4").abelianized() == IntMatrix{{-3, 1}, {-4, 1}});
  }

  TEST_CASE("the J generators are conjugated into the level-2 transvections") {
    // gamma = sqrt(2) diag(1, 1/2), so conjugating by gamma is conjugating
    // by diag(1, 1/2), which stays rational.
    RatMatrix g{{1, 0}, {0, Rational(1, 2)}};
    RatMatrix gi{{1, 0}, {0, 2}};
    IntMatrix j1 = twist_y().power(-4).abelianized();
    IntMatrix j2 = twist_x().abelianized();
    CHECK(j1 == IntMatrix{{1, 0}, {4, 1}});
    CHECK(j2 == IntMatrix{{1, 1}, {0, 1}});
    CHECK(g * to_rational(j1) * gi == RatMatrix{{1, 0}, {2, 1}});
    CHECK(g * to_rational(j2) * gi == RatMatrix{{1, 2}, {0, 1}});
  }

  TEST_CASE("composition: right factor acts first, inverses cancel") {
    FreeAut dx = twist_x(), dy = twist_y();
    CHECK(compose(dx, dx.inverse()).is_identity());
    CHECK(compose(dx, dy).abelianized() == dx.abelianized() * dy.abelianized());
    FreeWord sample = w("x y y X");
    CHECK(compose(dx, dy).apply(sample) == dx.apply(dy.apply(sample)));
    CHECK_THROWS_AS(compose(twist_x(1), twist_x(2)), InvalidArgument);
  }

  TEST_CASE("random twist words: homomorphism, inverse and determinant") {
    Rng rng(8);
    for (int trial = 0; trial < 60; ++trial) {
      FreeAut f = parse_twist_word(random_twist_word(rng, 6));
      REQUIRE(f.certified());
      FreeAut fi = f.inverse();
      for (std::size_t g = 0; g < 2; ++g) {
        CHECK(f.apply(fi.apply(FreeWord::generator(g))) == FreeWord::generator(g));
        CHECK(fi.apply(f.apply(FreeWord::generator(g))) == FreeWord::generator(g));
      }
      FreeWord u(random_letters(rng, 2, 6)), v(random_letters(rng, 2, 6));
      CHECK(f.apply(u * v) == f.apply(u) * f.apply(v));
      CHECK(abs(determinant(f.abelianized())) == 1);
      CHECK(f.apply(surface_boundary_words(1)[0]) == surface_boundary_words(1)[0]);
    }
  }

  TEST_CASE("powers and the length cap") {
    FreeAut f = parse_twist_word("Dx Dy^-1");
    CHECK(f.power(3) == compose(f, compose(f, f)));
    CHECK(f.power(0).is_identity());
    CHECK(compose(f.power(-2), f.power(2)).is_identity());
    CHECK_THROWS_AS(f.power(40, 1000), ComputationError);
  }

  TEST_CASE("text automorphisms are certified by Nielsen reduction") {
    FreeAut f = parse_automorphism("x -> x Y\ny -> y", kXY);
    CHECK(f == twist_y());
    CHECK(f.certified());
    CHECK(parse_automorphism("y -> y x", kXY) == twist_x());
    CHECK(format_automorphism(twist_x(), kXY) == "x -> x\ny -> y x");
    CHECK_THROWS_AS(parse_automorphism("x -> x x", kXY), InvalidArgument);
    CHECK_THROWS_AS(parse_automorphism("x => y", kXY), ParseError);
    CHECK_FALSE(certify_automorphism(FreeAut({w("x x"), w("y")})).has_value());
  }

  TEST_CASE("puncture action on the k-punctured torus") {
    for (std::size_t k = 1; k <= 3; ++k) {
      CHECK(fixes_punctures(twist_x(k), k));
      CHECK(fixes_punctures(twist_y(k), k));
      CHECK(fixes_punctures(twist_all_punctures(k), k));
    }
    CHECK(fixes_punctures(twist_adjacent_punctures(3, 1), 3));
    // A half twist swaps z1 and z2.
    Alphabet a = surface_alphabet(3);
    FreeAut swap = parse_automorphism("z1 -> z1 z2 Z1; z2 -> z1", a);
    auto images = puncture_action(swap, 3);
    REQUIRE(images[0].has_value());
    CHECK(images[0]->puncture == 1);
    CHECK_FALSE(fixes_punctures(swap, 3));
  }
}
