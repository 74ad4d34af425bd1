#include "vb1/triangle.hpp"

#include <map>
#include <numeric>
#include <unordered_map>

#include "vb1/error.hpp"
#include "vb1/rng.hpp"

namespace vb1 {

namespace {

constexpr std::uint32_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

struct Mat2 {
  std::uint32_t a, b, c, d;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 multiply(const Mat2& x, const Mat2& y, std::uint32_t p) {
  return {(x.a * y.a + x.b * y.c) % p, (x.a * y.b + x.b * y.d) % p, (x.c * y.a + x.d * y.c) % p,
          (x.c * y.b + x.d * y.d) % p};
}

bool invertible(const Mat2& m, std::uint32_t p) { return (m.a * m.d) % p != (m.b * m.c) % p; }

std::uint32_t encode(const Mat2& m, std::uint32_t p) { return ((m.a * p + m.b) * p + m.c) * p + m.d; }

// Order of m in GL(2, p), or 0 when it exceeds the group exponent bound.
std::uint64_t matrix_order(const Mat2& m, std::uint32_t p) {
  const Mat2 id{1, 0, 0, 1};
  Mat2 x = m;
  for (std::uint64_t k = 1; k <= static_cast<std::uint64_t>(p) * p; ++k) {
    if (x == id) return k;
    x = multiply(x, m, p);
  }
  return 0;
}

// Left-multiplication closure of {a, b} starting at the identity, as a
// table; nothing when it grows past cap.
template <typename T, typename Key, typename Mul, typename Label>
std::optional<FiniteGroupTable> closure_table(const T& identity, const T& a, const T& b, std::size_t cap, Key key,
                                              Mul mul, Label label, FiniteGroupTable::Element& ia,
                                              FiniteGroupTable::Element& ib) {
  std::vector<T> elements{identity};
  std::map<decltype(key(identity)), FiniteGroupTable::Element> index;
  index.emplace(key(identity), 0);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const T* s : {&a, &b}) {
      T g = mul(*s, elements[head]);
      if (index.emplace(key(g), static_cast<FiniteGroupTable::Element>(elements.size())).second) {
        elements.push_back(g);
        if (elements.size() > cap) return std::nullopt;
      }
    }
  }
  const std::size_t n = elements.size();
  std::vector<FiniteGroupTable::Element> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = index.at(key(mul(elements[i], elements[j])));
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& e : elements) labels.push_back(label(e));
  ia = index.at(key(a));
  ib = index.at(key(b));
  return FiniteGroupTable(std::move(labels), std::move(table), 0);
}

std::optional<QuotientCertificate> search_matrix_groups(unsigned n, const TriangleSearch& s, Rng& rng,
                                                        std::size_t& attempts, std::vector<std::uint32_t>& tried) {
  for (std::uint32_t p : kPrimes) {
    tried.push_back(p);
    for (std::size_t draw = 0; draw < s.budget; ++draw) {
      ++attempts;
      auto random_matrix = [&] {
        return Mat2{static_cast<std::uint32_t>(rng.below(p)), static_cast<std::uint32_t>(rng.below(p)),
                    static_cast<std::uint32_t>(rng.below(p)), static_cast<std::uint32_t>(rng.below(p))};
      };
      Mat2 a = random_matrix();
      Mat2 b = random_matrix();
      if (!invertible(a, p) || !invertible(b, p)) continue;
      if (matrix_order(a, p) != 2 * n || matrix_order(b, p) != 2 * n) continue;
      if (matrix_order(multiply(a, b, p), p) != n) continue;
      FiniteGroupTable::Element ia = 0, ib = 0;
      auto table = closure_table(
          Mat2{1, 0, 0, 1}, a, b, s.cap, [p](const Mat2& m) { return encode(m, p); },
          [p](const Mat2& x, const Mat2& y) { return multiply(x, y, p); },
          [](const Mat2& m) {
            return "[" + std::to_string(m.a) + " " + std::to_string(m.b) + "; " + std::to_string(m.c) + " " +
                   std::to_string(m.d) + "]";
          },
          ia, ib);
      if (!table || table->order() < s.min_order) continue;
      QuotientCertificate cert;
      cert.n = n;
      cert.source = "GL(2,p)";
      cert.prime = p;
      cert.group = std::move(*table);
      cert.a = ia;
      cert.b = ib;
      return cert;
    }
  }
  return std::nullopt;
}

std::optional<QuotientCertificate> search_symmetric_groups(unsigned n, const TriangleSearch& s, Rng& rng,
                                                           std::size_t& attempts) {
  for (std::uint32_t m = 3; m <= 8; ++m) {
    for (std::size_t draw = 0; draw < s.budget; ++draw) {
      ++attempts;
      auto random_perm = [&] {
        std::vector<Perm::Point> images(m);
        std::iota(images.begin(), images.end(), 0);
        for (std::uint32_t i = m - 1; i > 0; --i) std::swap(images[i], images[rng.below(i + 1)]);
        return Perm(std::move(images));
      };
      Perm a = random_perm();
      Perm b = random_perm();
      if (a.order() != 2 * n || b.order() != 2 * n || (a * b).order() != n) continue;
      FiniteGroupTable::Element ia = 0, ib = 0;
      auto table = closure_table(
          Perm::identity(m), a, b, s.cap, [](const Perm& x) { return x.images(); },
          [](const Perm& x, const Perm& y) { return y * x; }, [](const Perm& x) { return x.to_string(); }, ia, ib);
      if (!table || table->order() < s.min_order) continue;
      QuotientCertificate cert;
      cert.n = n;
      cert.source = "symmetric";
      cert.symmetric_degree = m;
      cert.group = std::move(*table);
      cert.a = ia;
      cert.b = ib;
      return cert;
    }
  }
  return std::nullopt;
}

}  // namespace

bool QuotientCertificate::verify() const {
  const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
  return group.element_order(a) == two_n && group.element_order(b) == two_n &&
         group.element_order(group.multiply(a, b)) == n && group.generated_subgroup_order({a, b}) == group.order();
}

Json QuotientCertificate::to_json() const {
  Json out{{"n", n},
           {"source", source},
           {"group_order", order()},
           {"a", group.label(a)},
           {"b", group.label(b)},
           {"orders",
            Json::array({group.element_order(a), group.element_order(b), group.element_order(group.multiply(a, b))})},
           {"verified", verify()},
           {"attempts", attempts}};
  if (prime) out["prime"] = *prime;
  if (symmetric_degree) out["symmetric_degree"] = *symmetric_degree;
  return out;
}

QuotientCertificate find_triangle_quotient(unsigned n, const TriangleSearch& search) {
  if (n < 2) throw InvalidArgument("triangle quotient needs n >= 2");
  if (search.cap < 1) throw InvalidArgument("group size cap must be positive");
  if (n == 2 && search.min_order <= 4 && search.cap >= 4) {
    QuotientCertificate cert;
    cert.n = 2;
    cert.source = "cyclic";
    cert.group = FiniteGroupTable::cyclic(4);
    cert.a = cert.b = 1;
    if (!cert.verify()) throw CertificateError("cyclic quotient failed verification");
    return cert;
  }
  Rng rng(search.seed);
  std::size_t attempts = 0;
  std::vector<std::uint32_t> tried;
  auto cert = search_matrix_groups(n, search, rng, attempts, tried);
  if (!cert && n <= 3) cert = search_symmetric_groups(n, search, rng, attempts);
  if (!cert) {
    std::string primes;
    for (auto p : tried) primes += (primes.empty() ? "" : ", ") + std::to_string(p);
    throw ComputationError("no (" + std::to_string(2 * n) + "," + std::to_string(2 * n) + "," + std::to_string(n) +
                           ") quotient of order in [" + std::to_string(search.min_order) + ", " +
                           std::to_string(search.cap) + "] after " + std::to_string(attempts) +
                           " draws; primes tried: " + primes);
  }
  cert->attempts = attempts;
  if (!cert->verify()) throw CertificateError("triangle quotient failed verification");
  return *cert;
}

PermCover case2_cover(const QuotientCertificate& cert) {
  Perm s1 = left_regular_representation(cert.group, cert.a);
  Perm s3 = left_regular_representation(cert.group, cert.b);
  return grid_cover(static_cast<std::uint32_t>(cert.order()), {s1, s1.inverse(), s3, s3.inverse()});
}

Json Case2Certificates::to_json() const {
  return Json{{"cycles", Json::array({cycles_sigma1, cycles_sigma3, cycles_product})},
              {"genus_row2", genus_row2},
              {"bound", bound.get_str()},
              {"counts_match", counts_match}};
}

Case2Certificates case2_certificates(const QuotientCertificate& cert) {
  Perm s1 = left_regular_representation(cert.group, cert.a);
  Perm s3 = left_regular_representation(cert.group, cert.b);
  const std::size_t order = cert.order();
  Case2Certificates out;
  out.cycles_sigma1 = s1.cycle_count();
  out.cycles_sigma3 = s3.cycle_count();
  out.cycles_product = (s1 * s3).cycle_count();
  std::size_t punctures = out.cycles_sigma1 + out.cycles_sigma3 + out.cycles_product;
  if (2 + order < punctures || (2 + order - punctures) % 2 != 0) {
    throw CertificateError("row-2 Euler characteristic is inconsistent");
  }
  out.genus_row2 = (2 + order - punctures) / 2;
  out.bound = Rational(2) + Rational(static_cast<long>(order)) * (Rational(1) - Rational(2, cert.n));
  out.bound.canonicalize();
  out.counts_match = out.cycles_sigma1 == order / (2 * cert.n) && out.cycles_sigma3 == order / (2 * cert.n) &&
                     out.cycles_product == order / cert.n;
  return out;
}

}  // namespace vb1
