#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "vb1/error.hpp"
#include "vb1/finite_group.hpp"
#include "vb1/matrix.hpp"
#include "vb1/perm.hpp"
#include "vb1/rng.hpp"

using namespace vb1;

namespace {

oracle::Grid grid(const IntMatrix& m) {
  oracle::Grid g(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int spread) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng.between(-spread, spread));
  return m;
}

IntMatrix diagonal_matrix(const SmithForm& s, std::size_t rows, std::size_t cols) {
  IntMatrix d(rows, cols);
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) d(i, i) = s.diagonal[i];
  return d;
}

}  // namespace

TEST_SUITE("perm") {
  TEST_CASE("parse and print use 1-based cycle notation") {
    Perm p = Perm::parse("(1 2 3 4)(5 6)");
    CHECK(p.degree() == 6);
    CHECK(p(0) == 1);
    CHECK(p(5) == 4);
    CHECK(p.to_string() == "(1 2 3 4)(5 6)");
    CHECK(Perm::identity(3).to_string() == "()");
    CHECK(Perm::parse("(2 3)", 5).degree() == 5);
  }

  TEST_CASE("malformed cycle strings are rejected") {
    CHECK_THROWS_AS(Perm::parse("(1 2"), ParseError);
    CHECK_THROWS_AS(Perm::parse("(1 1)"), ParseError);
    CHECK_THROWS_AS(Perm::parse("(0 1)"), ParseError);
    CHECK_THROWS_AS(Perm::parse("(1 a)"), ParseError);
    CHECK_THROWS_AS(Perm({0, 0}), InvalidArgument);
  }

  TEST_CASE("product is read left to right") {
    Perm a = Perm::parse("(1 2)", 3);
    Perm b = Perm::parse("(2 3)", 3);
    // 1 -a-> 2 -b-> 3
    CHECK((a * b)(0) == 2);
    CHECK((a * b).to_string() == "(1 3 2)");
  }

  TEST_CASE("cycles of small permutations") {
    Perm c = Perm::parse("(1 2 3 4)");
    CHECK(c.pow(2).to_string() == "(1 3)(2 4)");
    CHECK(c.cycles().size() == 1);
    CHECK(c.order() == 4);
    CHECK(Perm::identity(3).cycles().size() == 3);
    CHECK(c.pow(-1) == c.inverse());
  }

  TEST_CASE("random permutations: associativity, cycle partition, order is lcm") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t n = 1 + rng.below(9);
      auto random = [&] {
        std::vector<Perm::Point> v(n);
        std::iota(v.begin(), v.end(), 0);
        for (std::size_t i = n; i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
        return Perm(v);
      };
      Perm a = random(), b = random(), c = random();
      CHECK((a * b) * c == a * (b * c));
      CHECK((a * a.inverse()).is_identity());

      std::vector<std::size_t> images(a.images().begin(), a.images().end());
      CHECK(a.cycle_count() == oracle::cycle_count(images));
      std::vector<bool> seen(n);
      mpz_class lcm = 1;
      for (const auto& cyc : a.cycles()) {
        mpz_class len = static_cast<unsigned long>(cyc.size());
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), len.get_mpz_t());
        for (auto p : cyc) {
          CHECK_FALSE(seen[p]);
          seen[p] = true;
        }
      }
      CHECK(std::all_of(seen.begin(), seen.end(), [](bool s) { return s; }));
      CHECK(a.order() == lcm);
      CHECK(a.pow(static_cast<long long>(lcm.get_si())).is_identity());
      CHECK(Perm::parse(a.to_string(), n) == a);
    }
  }
}

TEST_SUITE("smith") {
  TEST_CASE("small diagonal forms") {
    SmithForm s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
    CHECK(s.diagonal == std::vector<Integer>{1, 6});
    CHECK(s.rank == 2);
    s = smith_normal_form(IntMatrix(2, 2));
    CHECK(s.diagonal == std::vector<Integer>{0, 0});
    CHECK(s.rank == 0);
    s = smith_normal_form(IntMatrix{{1, 0}, {0, 0}});
    CHECK(s.diagonal == std::vector<Integer>{1, 0});
    CHECK(s.rank == 1);
    CHECK(smith_normal_form(IntMatrix()).diagonal.empty());
  }

  TEST_CASE("random matrices: determinantal divisors, witnesses, rank") {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t rows = 1 + rng.below(4), cols = 1 + rng.below(4);
      IntMatrix m = random_matrix(rng, rows, cols, trial % 3 == 0 ? 1 : 6);
      if (trial % 5 == 0) {
        for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = 2 * m(0, j);
      }
      SmithForm s = smith_normal_form(m, true);
      auto g = grid(m);

      Integer running = 1;
      for (std::size_t k = 1; k <= s.diagonal.size(); ++k) {
        running *= s.diagonal[k - 1];
        CHECK(running == oracle::determinantal_divisor(g, k));
        if (k > 1 && s.diagonal[k - 1] != 0) {
          CHECK(mpz_divisible_p(s.diagonal[k - 1].get_mpz_t(), s.diagonal[k - 2].get_mpz_t()));
        }
      }
      CHECK(s.rank == oracle::rank(g));
      CHECK(s.left * m * s.right == diagonal_matrix(s, rows, cols));
      CHECK(abs(determinant(s.left)) == 1);
      CHECK(abs(determinant(s.right)) == 1);
    }
  }

  TEST_CASE("dense matrices whose elimination blows up") {
    IntMatrix m{{2, 2, 2, 1, -2, -1, 2, 0, -3, -2},   {1, -3, -2, 3, 0, -2, -1, 3, -3, -1},
                {-1, 11, 8, -8, -2, 5, 5, -9, 6, 1},  {-1, 2, 3, 2, -1, 1, -1, 0, -3, -3},
                {2, -1, 1, 3, -1, 3, -1, 3, -2, 3},   {-3, 1, 2, -1, -3, 3, -1, 3, -2, 1},
                {-3, -1, -1, 1, -3, 3, 1, 2, 2, 0},   {0, 0, 3, -3, 1, -2, 2, 2, -2, -3},
                {1, 1, -3, 1, -2, -1, -3, 1, -3, -2}, {-3, -2, 3, -3, 0, -3, 2, -3, 1, 1},
                {-3, 0, -3, 1, -1, 3, 0, 0, 3, -1},   {1, 2, 0, 2, 2, -2, 0, 2, 1, 1}};
    SmithForm s = smith_normal_form(m);
    auto g = grid(m);
    CHECK(s.rank == oracle::rank(g));
    CHECK(s.diagonal[0] == oracle::determinantal_divisor(g, 1));
    CHECK(s.diagonal[0] * s.diagonal[1] == oracle::determinantal_divisor(g, 2));
    Integer product = 1;
    for (std::size_t i = 0; i < s.rank; ++i) product *= s.diagonal[i];
    CHECK(product == oracle::determinantal_divisor(g, s.rank));

    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
      IntMatrix d = random_matrix(rng, 9, 8, 9);
      for (std::size_t j = 0; j < 8; ++j) d(8, j) = 2 * d(0, j) + 4 * d(1, j);
      SmithForm ds = smith_normal_form(d);
      auto dg = grid(d);
      Integer running = 1;
      for (std::size_t k = 1; k <= ds.rank; ++k) {
        running *= ds.diagonal[k - 1];
        if (k <= 3 || k == ds.rank) CHECK(running == oracle::determinantal_divisor(dg, k));
      }
    }
  }

  TEST_CASE("entries far beyond 64 bits") {
    Integer big = Integer("123456789012345678901234567890");
    IntMatrix m{{big, big + 1}, {big * big, big * big + big}};
    SmithForm s = smith_normal_form(m, true);
    CHECK(s.left * m * s.right == diagonal_matrix(s, 2, 2));
    CHECK(s.diagonal[0] * s.diagonal[1] == abs(determinant(m)));
  }
}

TEST_SUITE("rank") {
  TEST_CASE("every rank routine agrees with schoolbook elimination") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t rows = 1 + rng.below(12), cols = 1 + rng.below(12);
      IntMatrix m = random_matrix(rng, rows, cols, 3);
      // Force dependencies.
      if (rows > 2) {
        for (std::size_t j = 0; j < cols; ++j) m(2, j) = m(0, j) - 3 * m(1, j);
      }
      std::size_t expected = oracle::rank(grid(m));
      CHECK(rank(m) == expected);
      CHECK(rank_bareiss(m) == expected);
      CHECK(rank(to_rational(m)) == expected);
      CHECK(rank_modular(m) <= expected);
      CHECK(smith_normal_form(m).rank == expected);
    }
  }

  TEST_CASE("large matrices take the modular path and stay exact") {
    Rng rng(3);
    IntMatrix m = random_matrix(rng, 90, 70, 2);
    for (std::size_t j = 0; j < 70; ++j) {
      m(10, j) = m(0, j) + m(1, j);
      m(20, j) = 5 * m(3, j) - m(4, j);
    }
    CHECK(rank(m) == oracle::rank(grid(m)));
  }
}

TEST_SUITE("fixed subspace") {
  TEST_CASE("small examples") {
    CHECK(fixed_subspace(RatMatrix::identity(2)).size() == 2);
    CHECK(fixed_subspace(RatMatrix{{2, 1}, {1, 1}}).empty());
    auto axis = fixed_subspace(RatMatrix{{1, 1}, {0, 1}});
    REQUIRE(axis.size() == 1);
    CHECK(axis[0][1] == 0);
    CHECK(axis[0][0] != 0);
    CHECK_THROWS_AS(fixed_subspace(RatMatrix(2, 3)), InvalidArgument);
  }

  TEST_CASE("dimension is n - rank(A - I) and every vector is fixed") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t n = 1 + rng.below(6);
      IntMatrix a = random_matrix(rng, n, n, 2);
      if (trial % 2 == 0) {
        // Permutation matrices have large fixed spaces.
        a = IntMatrix(n, n);
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
        for (std::size_t i = 0; i < n; ++i) a(p[i], i) = 1;
      }
      auto fixed = fixed_subspace(to_rational(a));
      IntMatrix shifted = a - IntMatrix::identity(n);
      CHECK(fixed.size() == n - oracle::rank(grid(shifted)));
      for (const auto& v : fixed) CHECK(to_rational(a).apply(v) == v);
      RationalSubspace span(n);
      for (const auto& v : fixed) CHECK(span.add(v));
    }
  }
}

TEST_SUITE("finite groups") {
  TEST_CASE("left regular representation of cyclic groups") {
    FiniteGroupTable z4 = FiniteGroupTable::cyclic(4);
    Perm g = left_regular_representation(z4, z4.index_of("1"));
    CHECK(g.cycles().size() == 1);
    CHECK(g.order() == 4);
    CHECK(left_regular_representation(z4, z4.identity()).is_identity());
    FiniteGroupTable z6 = FiniteGroupTable::cyclic(6);
    Perm h = left_regular_representation(z6, "2");
    CHECK(h.cycle_count() == 2);
    CHECK(h.order() == 3);
    CHECK_THROWS_AS(left_regular_representation(z6, "7"), InvalidArgument);
  }

  TEST_CASE("cycle count times order is the group order") {
    for (std::uint32_t n : {1u, 5u, 12u, 30u}) {
      FiniteGroupTable g = FiniteGroupTable::cyclic(n);
      CHECK(g.check_associativity_exhaustive());
      for (FiniteGroupTable::Element e = 0; e < n; ++e) {
        Perm p = left_regular_representation(g, e);
        CHECK(p.cycle_count() * g.element_order(e) == n);
        CHECK(g.multiply(e, g.inverse(e)) == g.identity());
      }
    }
  }

  TEST_CASE("tables that are not groups are rejected") {
    CHECK_THROWS_AS(FiniteGroupTable({"a", "b"}, {0, 0, 0, 1}, 0), InvalidArgument);
  }
}
