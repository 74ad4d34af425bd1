#include "vb1/matrix.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace vb1 {

namespace {

__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
  u128 z = static_cast<u128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(z & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
  std::uint64_t s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e != 0) {
    if (e & 1U) r = mod_mul(r, a);
    a = mod_mul(a, a);
    e >>= 1U;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a) { return mod_pow(a, kPrime - 2); }

std::uint64_t reduce_mod(const Integer& x) { return mpz_fdiv_ui(x.get_mpz_t(), kPrime); }

struct ModEchelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
  std::vector<std::vector<std::uint64_t>> rows;  // reduced rows, one per pivot
};

ModEchelon mod_rref(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = reduce_mod(m(i, j));
  ModEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::uint64_t inv = mod_inv(a[r][c]);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = mod_mul(a[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint64_t f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (a[r][j] != 0) a[i][j] = mod_sub(a[i][j], mod_mul(f, a[r][j]));
      }
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

// Rational r/s with |r|, s <= sqrt(p/2) and r = a*s mod p, if one exists.
bool rational_reconstruct(std::uint64_t a, Rational& out) {
  const i128 bound = 1073741823;  // floor(sqrt((2^61 - 1) / 2))
  i128 r0 = kPrime, r1 = a, s0 = 0, s1 = 1;
  while (r1 > bound) {
    i128 q = r0 / r1;
    i128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || s1 > bound || s1 < -bound) return false;
  long long num = static_cast<long long>(r1);
  long long den = static_cast<long long>(s1);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Integer g;
  Integer n(static_cast<long>(num));
  Integer d(static_cast<long>(den));
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1) return false;
  out = Rational(n, d);
  return true;
}

// Tries to prove rank_Q(m) <= rank_p(m) by exhibiting rational kernel vectors.
bool certify_modular_rank(const IntMatrix& m, const ModEchelon& e) {
  const std::size_t cols = m.cols();
  std::vector<std::vector<std::pair<std::size_t, Integer>>> nonzero(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(m(i, j)) != 0) nonzero[i].emplace_back(j, m(i, j));
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rank; ++i) {
      std::uint64_t x = e.rows[i][f];
      if (x == 0) continue;
      if (!rational_reconstruct(mod_sub(0, x), v[e.pivot_cols[i]])) return false;
    }
    IntVector w = clear_denominators(v);
    for (const auto& row : nonzero) {
      Integer acc = 0;
      for (const auto& [j, x] : row) {
        if (sgn(w[j]) != 0) acc += x * w[j];
      }
      if (sgn(acc) != 0) return false;
    }
  }
  return true;
}

void swap_rows(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

// row_i += q * row_j
void add_row(IntMatrix& a, std::size_t i, std::size_t j, const Integer& q, std::size_t from = 0) {
  for (std::size_t c = from; c < a.cols(); ++c) {
    if (sgn(a(j, c)) != 0) a(i, c) += q * a(j, c);
  }
}

// col_i += q * col_j
void add_col(IntMatrix& a, std::size_t i, std::size_t j, const Integer& q, std::size_t from = 0) {
  for (std::size_t r = from; r < a.rows(); ++r) {
    if (sgn(a(r, j)) != 0) a(r, i) += q * a(r, j);
  }
}

}  // namespace

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InvalidArgument("hconcat: row counts differ");
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

template <class T>
static std::string matrix_string(const Matrix<T>& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i == 0 ? "[" : ", [";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j != 0) out += ", ";
      out += m(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

std::string to_string(const IntMatrix& m) { return matrix_string(m); }
std::string to_string(const RatMatrix& m) { return matrix_string(m); }

namespace {

std::size_t max_bits(const IntMatrix& a, std::size_t from) {
  std::size_t bits = 0;
  for (std::size_t i = from; i < a.rows(); ++i)
    for (std::size_t j = from; j < a.cols(); ++j) bits = std::max(bits, mpz_sizeinbase(a(i, j).get_mpz_t(), 2));
  return bits;
}

// Bits of the Hadamard bound on every minor: the product of row norms.
std::size_t hadamard_bits(const IntMatrix& m) {
  std::size_t bits = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer norm2 = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) norm2 += m(i, j) * m(i, j);
    if (sgn(norm2) != 0) bits += mpz_sizeinbase(norm2.get_mpz_t(), 2) / 2 + 1;
  }
  return bits;
}

// Rank and the absolute value of a nonzero maximal minor, by Bareiss
// elimination (the last pivot is that minor).
std::pair<std::size_t, Integer> rank_and_minor(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a(p, c)) == 0) ++p;
    if (p == rows) continue;
    swap_rows(a, p, r);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer x = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return {r, abs(prev)};
}

// Smith form over Z/d for a d that every invariant factor divides (here a
// nonzero maximal minor).  Z^m / (columns + dZ^m) has invariant factors
// gcd(d_i, d) = d_i followed by d's, so entries can be kept below d.
SmithForm smith_modular(const IntMatrix& m) {
  auto [r, d] = rank_and_minor(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t steps = std::min(rows, cols);
  SmithForm out;
  out.diagonal.assign(steps, Integer(0));
  out.rank = r;
  if (r == 0) return out;
  Integer half = d / 2;
  auto reduce = [&](Integer& x) {
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    if (x > half) x -= d;
  };
  IntMatrix a = m;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) reduce(a(i, j));

  std::size_t t = 0;
  for (; t < steps; ++t) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (sgn(a(i, j)) == 0) continue;
        if (pi == rows || mpz_cmpabs(a(i, j).get_mpz_t(), a(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    swap_rows(a, t, pi);
    swap_cols(a, t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        if (sgn(q) != 0) {
          add_row(a, i, t, -q, t);
          for (std::size_t c = t; c < cols; ++c) reduce(a(i, c));
        }
        if (sgn(a(i, t)) != 0) {
          swap_rows(a, t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        if (sgn(q) != 0) {
          add_col(a, j, t, -q, t);
          for (std::size_t rr = t; rr < rows; ++rr) reduce(a(rr, j));
        }
        if (sgn(a(t, j)) != 0) {
          swap_cols(a, t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (sgn(a(i, j)) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      add_row(a, t, bad, Integer(1), t);
      for (std::size_t c = t; c < cols; ++c) reduce(a(t, c));
    }
  }
  // Diagonal entries that vanished modulo d stand for d itself.
  std::vector<Integer> factors;
  for (std::size_t i = 0; i < steps; ++i) {
    Integer g = i < t ? a(i, i) : Integer(0);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    factors.push_back(g);
  }
  std::sort(factors.begin(), factors.end());
  for (std::size_t i = 0; i < r; ++i) out.diagonal[i] = factors[i];
  return out;
}

// Elimination with unimodular row and column operations.  Without
// witnesses it gives up (returns nothing) once an entry outgrows
// bit_limit bits.
std::optional<SmithForm> smith_by_elimination(const IntMatrix& m, bool keep_witnesses, std::size_t bit_limit) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = keep_witnesses ? IntMatrix::identity(rows) : IntMatrix();
  IntMatrix v = keep_witnesses ? IntMatrix::identity(cols) : IntMatrix();
  auto row_swap = [&](std::size_t i, std::size_t j) {
    swap_rows(a, i, j);
    if (keep_witnesses) swap_rows(u, i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    swap_cols(a, i, j);
    if (keep_witnesses) swap_cols(v, i, j);
  };
  auto row_add = [&](std::size_t i, std::size_t j, const Integer& q, std::size_t from) {
    add_row(a, i, j, q, from);
    if (keep_witnesses) add_row(u, i, j, q);
  };
  auto col_add = [&](std::size_t i, std::size_t j, const Integer& q, std::size_t from) {
    add_col(a, i, j, q, from);
    if (keep_witnesses) add_col(v, i, j, q);
  };

  const std::size_t steps = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    // Smallest absolute value first, then the Markowitz count (row and
    // column fill) to keep sparse relation matrices sparse.
    std::vector<std::size_t> row_nnz(rows, 0), col_nnz(cols, 0);
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (sgn(a(i, j)) != 0) {
          ++row_nnz[i];
          ++col_nnz[j];
        }
      }
    }
    std::size_t pi = rows, pj = cols;
    std::size_t best_fill = 0;
    Integer best;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (sgn(a(i, j)) == 0) continue;
        const std::size_t fill = (row_nnz[i] - 1) * (col_nnz[j] - 1);
        const int cmp = pi == rows ? -1 : mpz_cmpabs(a(i, j).get_mpz_t(), best.get_mpz_t());
        if (cmp < 0 || (cmp == 0 && fill < best_fill)) {
          best = a(i, j);
          best_fill = fill;
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    if (!keep_witnesses && t > 0 && max_bits(a, t) > bit_limit) return std::nullopt;
    row_swap(t, pi);
    col_swap(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        if (sgn(q) != 0) row_add(i, t, -q, t);
        if (sgn(a(i, t)) != 0) {
          row_swap(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        if (sgn(q) != 0) col_add(j, t, -q, t);
        if (sgn(a(t, j)) != 0) {
          col_swap(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (sgn(a(i, j)) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      row_add(t, bad, Integer(1), t);
    }
    if (sgn(a(t, t)) < 0) {
      for (std::size_t c = t; c < cols; ++c) a(t, c) = -a(t, c);
      if (keep_witnesses)
        for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
    }
  }
  SmithForm out;
  out.diagonal.resize(steps);
  for (std::size_t i = 0; i < steps; ++i) out.diagonal[i] = a(i, i);
  out.rank = t;
  if (keep_witnesses) {
    out.left = std::move(u);
    out.right = std::move(v);
  }
  return out;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m, bool keep_witnesses) {
  if (auto s = smith_by_elimination(m, keep_witnesses, hadamard_bits(m) + 64)) return *std::move(s);
  return smith_modular(m);
}

std::size_t rank_bareiss(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a(p, c)) == 0) ++p;
    if (p == rows) continue;
    swap_rows(a, p, r);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer x = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

std::size_t rank_modular(const IntMatrix& m) { return mod_rref(m).rank; }

std::size_t rank(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.rows() * m.cols() <= 256) return rank_bareiss(m);
  const bool tall = m.rows() > m.cols();
  IntMatrix wide = tall ? m.transpose() : m;
  ModEchelon e = mod_rref(wide);
  if (certify_modular_rank(wide, e)) return e.rank;
  return rank_bareiss(m);
}

std::size_t rank(const RatMatrix& m) {
  IntMatrix scaled(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    IntVector row = clear_denominators(m.row(i));
    for (std::size_t j = 0; j < m.cols(); ++j) scaled(i, j) = row[j];
  }
  return rank(scaled);
}

Integer determinant(const IntMatrix& m) {
  if (!m.square()) throw InvalidArgument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(a(p, k)) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      swap_rows(a, p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer x = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Reduced row echelon form over Q in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  RatMatrix a = m;
  std::vector<std::size_t> pivots = rref(a, a.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<RatVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<RatVector> fixed_subspace(const RatMatrix& a) {
  if (!a.square()) {
    throw InvalidArgument("fixed_subspace: matrix is " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + ", not square");
  }
  RatMatrix shifted = a;
  for (std::size_t i = 0; i < a.rows(); ++i) shifted(i, i) -= 1;
  return kernel_basis(shifted);
}

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw InvalidArgument("solve: right-hand side has wrong length");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = rref(aug, a.cols());
  for (std::size_t i = pivots.size(); i < a.rows(); ++i) {
    if (sgn(aug(i, a.cols())) != 0) return std::nullopt;
  }
  RatVector x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  return x;
}

RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

IntVector clear_denominators(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), l.get_mpz_t(), v[i].get_den_mpz_t());
    out[i] = v[i].get_num() * q;
  }
  return out;
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool RationalSubspace::add(RatVector v) {
  if (v.size() != ambient_) throw InvalidArgument("RationalSubspace::add: wrong vector length");
  v = reduce(std::move(v));
  std::size_t q = 0;
  while (q < v.size() && sgn(v[q]) == 0) ++q;
  if (q == v.size()) return false;
  Rational inv = 1 / v[q];
  for (auto& x : v) {
    if (sgn(x) != 0) x *= inv;
  }
  for (auto& b : basis_) {
    if (sgn(b[q]) == 0) continue;
    Rational f = b[q];
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (sgn(v[j]) != 0) b[j] -= f * v[j];
    }
  }
  basis_.push_back(std::move(v));
  pivots_.push_back(q);
  return true;
}

RatVector RationalSubspace::reduce(RatVector v) const {
  if (v.size() != ambient_) throw InvalidArgument("RationalSubspace::reduce: wrong vector length");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (sgn(v[pivots_[i]]) == 0) continue;
    Rational f = v[pivots_[i]];
    const RatVector& b = basis_[i];
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (sgn(b[j]) != 0) v[j] -= f * b[j];
    }
  }
  return v;
}

std::vector<std::size_t> RationalSubspace::free_coordinates() const {
  std::vector<bool> is_pivot(ambient_, false);
  for (std::size_t p : pivots_) is_pivot[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ambient_; ++i)
    if (!is_pivot[i]) out.push_back(i);
  return out;
}

}  // namespace vb1
