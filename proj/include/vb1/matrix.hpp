#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "vb1/error.hpp"

namespace vb1 {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw InvalidArgument("ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  void set_column(std::size_t c, const std::vector<T>& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw InvalidArgument("matrix-vector size mismatch");
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      T acc = 0;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (sgn((*this)(r, c)) != 0 && sgn(v[c]) != 0) acc += (*this)(r, c) * v[c];
      }
      out[r] = acc;
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product size mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (sgn(x) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (sgn(b(k, j)) != 0) out(i, j) += x * b(k, j);
        }
      }
    }
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw InvalidArgument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
// Horizontal concatenation [a | b]; row counts must agree.
IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
std::string to_string(const IntMatrix& m);
std::string to_string(const RatMatrix& m);

struct SmithForm {
  // d_1 | d_2 | ..., length min(rows, cols), non-negative.
  std::vector<Integer> diagonal;
  std::size_t rank = 0;
  // Unimodular witnesses with left * M * right = diag; empty unless requested.
  IntMatrix left;
  IntMatrix right;
};

SmithForm smith_normal_form(const IntMatrix& m, bool keep_witnesses = false);

// Exact rank.  Large matrices are reduced modulo 2^61-1 and the result is
// certified by lifting a kernel basis to Q and checking it exactly; when the
// certificate cannot be produced the fraction-free elimination decides.
std::size_t rank(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);
// Fraction-free (Bareiss) elimination; always exact, slower.
std::size_t rank_bareiss(const IntMatrix& m);
// Rank modulo 2^61-1, a lower bound for the rank over Q.
std::size_t rank_modular(const IntMatrix& m);
Integer determinant(const IntMatrix& m);

std::vector<RatVector> kernel_basis(const RatMatrix& m);
// Basis of ker(A - I).  Throws InvalidArgument for non-square input.
std::vector<RatVector> fixed_subspace(const RatMatrix& a);
// Some solution of a x = b, or nothing when the system is inconsistent.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

RatVector to_rational(const IntVector& v);
// Scales a rational vector by the lcm of its denominators.
IntVector clear_denominators(const RatVector& v);
bool is_zero(const RatVector& v);

// A subspace of Q^n kept in reduced echelon form: each basis vector has a
// pivot coordinate where it is 1 and every other basis vector is 0.
class RationalSubspace {
 public:
  explicit RationalSubspace(std::size_t ambient = 0) : ambient_(ambient) {}

  // Returns true when v was not already in the span.
  bool add(RatVector v);
  // v minus its component along the pivots; zero iff v lies in the span.
  RatVector reduce(RatVector v) const;
  bool contains(const RatVector& v) const { return is_zero(reduce(v)); }

  std::size_t ambient() const { return ambient_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  // Coordinates that are not pivots, ascending.  Their unit vectors map to
  // a basis of the quotient Q^n / span.
  std::vector<std::size_t> free_coordinates() const;

 private:
  std::size_t ambient_;
  std::vector<RatVector> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace vb1
