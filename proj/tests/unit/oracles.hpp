// Independent reference computations for the unit tests.  Nothing here
// calls into the library's algebra; results are compared against it.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <numeric>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Z = mpz_class;
using Q = mpq_class;
using Grid = std::vector<std::vector<Z>>;

// Rank over Q by schoolbook elimination on a rational copy.
inline std::size_t rank(const Grid& m) {
  if (m.empty()) return 0;
  std::vector<std::vector<Q>> a(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) a[i].assign(m[i].begin(), m[i].end());
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Q factor = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
    }
    ++r;
  }
  return r;
}

// Determinant by rational elimination.
inline Z determinant_by_elimination(const Grid& m) {
  std::size_t n = m.size();
  std::vector<std::vector<Q>> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i].assign(m[i].begin(), m[i].end());
  Q det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Q factor = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= factor * a[c][j];
    }
  }
  return det.get_num();
}

// Leibniz determinant; only for the tiny minors below.
inline Z determinant(const Grid& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Z total = 0;
  do {
    Z term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// k-th determinantal divisor: gcd of all k x k minors.  The Smith diagonal
// satisfies d_1 ... d_k = D_k.
inline Z determinantal_divisor(const Grid& m, std::size_t k) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(rows, k, 0, cur, rs);
  subsets(cols, k, 0, cur, cs);
  Z g = 0;
  for (const auto& r : rs) {
    for (const auto& c : cs) {
      Grid minor(k, std::vector<Z>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor[i][j] = m[r[i]][c[j]];
      Z d = k <= 5 ? determinant(minor) : determinant_by_elimination(minor);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  }
  return g;
}

// Free reduction with a stack; letters are signed generator numbers.
inline std::vector<int> reduce(const std::vector<int>& w) {
  std::vector<int> out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

// Right action of a word on a point, perms given as image arrays.
inline std::size_t act(const std::vector<std::vector<std::size_t>>& gens, std::size_t p, const std::vector<int>& w) {
  for (int l : w) {
    const auto& g = gens[static_cast<std::size_t>(std::abs(l)) - 1];
    if (l > 0) {
      p = g[p];
    } else {
      p = static_cast<std::size_t>(std::find(g.begin(), g.end(), p) - g.begin());
    }
  }
  return p;
}

inline std::size_t cycle_count(const std::vector<std::size_t>& images) {
  std::vector<bool> seen(images.size());
  std::size_t count = 0;
  for (std::size_t s = 0; s < images.size(); ++s) {
    if (seen[s]) continue;
    ++count;
    for (std::size_t p = s; !seen[p]; p = images[p]) seen[p] = true;
  }
  return count;
}

}  // namespace oracle
