#include "doctest.h"
#include "oracles.hpp"
#include "vb1/error.hpp"
#include "vb1/triangle.hpp"

using namespace vb1;

namespace {

// Order of an element by repeated multiplication in the table.
std::uint64_t order_by_table(const FiniteGroupTable& g, FiniteGroupTable::Element a) {
  std::uint64_t k = 1;
  for (auto p = a; p != g.identity(); p = g.multiply(p, a)) ++k;
  return k;
}

}  // namespace

TEST_SUITE("triangle quotients") {
  TEST_CASE("n = 2 is the cyclic group of order 4") {
    QuotientCertificate q = find_triangle_quotient(2);
    CHECK(q.order() == 4);
    CHECK(q.a == q.b);
    CHECK(order_by_table(q.group, q.a) == 4);
    CHECK(order_by_table(q.group, q.group.multiply(q.a, q.b)) == 2);
    CHECK(q.verify());
    Perm la = left_regular_representation(q.group, q.a);
    CHECK((la * la).cycle_count() == 2);
    CHECK((la * la).order() == 2);
  }

  TEST_CASE("n = 2 reproduces the figure-two cover") {
    PermCover c = case2_cover(find_triangle_quotient(2));
    PermCover fig = figure_two_cover();
    CHECK(c.degree() == 16);
    CHECK(c.punctures().size() == fig.punctures().size());
    CHECK(c.genus() == fig.genus());
    Case2Certificates cert = case2_certificates(find_triangle_quotient(2));
    CHECK(cert.cycles_sigma1 == 1);
    CHECK(cert.cycles_sigma3 == 1);
    CHECK(cert.cycles_product == 2);
    CHECK(cert.genus_row2 == 1);
    CHECK(cert.bound == 2);
    CHECK(cert.bound == 2 * static_cast<long>(cert.genus_row2));
  }

  TEST_CASE("n = 3: element orders (6, 6, 3) and the left-regular counts") {
    TriangleSearch search;
    search.min_order = 13;
    QuotientCertificate q = find_triangle_quotient(3, search);
    const auto& g = q.group;
    CHECK(q.order() >= 13);
    CHECK(order_by_table(g, q.a) == 6);
    CHECK(order_by_table(g, q.b) == 6);
    CHECK(order_by_table(g, g.multiply(q.a, q.b)) == 3);
    CHECK(g.generated_subgroup_order({q.a, q.b}) == q.order());
    CHECK(g.check_associativity_exhaustive());

    Case2Certificates cert = case2_certificates(q);
    std::size_t n = q.order();
    CHECK(cert.cycles_sigma1 == n / 6);
    CHECK(cert.cycles_sigma3 == n / 6);
    CHECK(cert.cycles_product == n / 3);
    CHECK(cert.counts_match);
    Rational third(static_cast<long>(n), 3);
    third.canonicalize();
    CHECK(cert.bound == 2 + third);

    PermCover c = case2_cover(q);
    CHECK(c.degree() == 4 * n);
    for (const auto& p : c.punctures()) CHECK(3 % p.degree == 0);
    CHECK_NOTHROW(orbifold_fill(c, 3));
  }

  TEST_CASE("same seed, same certificate") {
    TriangleSearch search;
    search.min_order = 13;
    search.seed = 99;
    CHECK(find_triangle_quotient(3, search).to_json() == find_triangle_quotient(3, search).to_json());
  }

  TEST_CASE("n = 4 at a reduced cap") {
    TriangleSearch search;
    search.cap = 500;
    QuotientCertificate q = find_triangle_quotient(4, search);
    CHECK(q.verify());
    CHECK(order_by_table(q.group, q.a) == 8);
    CHECK(order_by_table(q.group, q.group.multiply(q.a, q.b)) == 4);
  }

  TEST_CASE("an exhausted budget is reported") {
    TriangleSearch search;
    search.budget = 1;
    search.cap = 10;
    search.min_order = 9;
    CHECK_THROWS_AS(find_triangle_quotient(5, search), ComputationError);
  }
}
