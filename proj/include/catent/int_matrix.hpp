#pragma once

#include <initializer_list>
#include <vector>

#include "catent/numeric.hpp"

namespace catent {

// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> init)
      : rows_(init.size()), cols_(0) {
    for (const auto& row : init) {
      if (cols_ == 0) cols_ = row.size();
      if (row.size() != cols_) throw error(errc::input, "ragged matrix literal");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    require_same_shape(a, b);
    IntMatrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
    return c;
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    require_same_shape(a, b);
    IntMatrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
    return c;
  }

  friend IntMatrix operator-(const IntMatrix& a) {
    IntMatrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = -a.data_[k];
    return c;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw error(errc::input, "matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntMatrix operator*(const Int& s, const IntMatrix& a) {
    IntMatrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = s * a.data_[k];
    return c;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw error(errc::input, "matrix-vector shape mismatch");
    std::vector<Int> out(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Int trace() const {
    require_square();
    Int t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  IntMatrix pow(unsigned long long e) const {
    require_square();
    IntMatrix result = identity(rows_);
    IntMatrix base = *this;
    while (e > 0) {
      if (e & 1ULL) result = result * base;
      base = base * base;
      e >>= 1ULL;
    }
    return result;
  }

  void require_square() const {
    if (!is_square()) throw error(errc::input, "square matrix required");
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ", ";
        s += (*this)(i, j).str();
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  static void require_same_shape(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw error(errc::input, "matrix shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<Int> data_;
};

// Bareiss fraction-free elimination; all intermediate divisions are exact.
inline Int det(IntMatrix m) {
  m.require_square();
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

// Exact inverse of a matrix with det = +-1; reports the determinant otherwise.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  m.require_square();
  const std::size_t n = m.rows();
  const Int d = det(m);
  if (d != 1 && d != -1)
    throw error(errc::precondition, "unimodular_inverse: determinant is " + d.str());
  // Gauss-Jordan over rationals; the result is integral because |det| = 1.
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) throw error(errc::internal, "unimodular_inverse: singular despite unit det");
    std::swap(a[col], a[p]);
    const Rat pivot = a[col][col];
    for (std::size_t j = 0; j < 2 * n; ++j) a[col][j] /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rat f = a[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& v = a[i][n + j];
      if (boost::multiprecision::denominator(v) != 1)
        throw error(errc::internal, "unimodular_inverse: non-integral entry");
      inv(i, j) = boost::multiprecision::numerator(v);
    }
  return inv;
}

// Coefficients of det(lambda I - m), monic, by Faddeev-LeVerrier.
// Returned as c[0..n] with c[0] = 1 (descending powers of lambda).
inline std::vector<Int> char_poly(const IntMatrix& m) {
  m.require_square();
  const std::size_t n = m.rows();
  std::vector<Int> c(n + 1, Int(0));
  c[0] = 1;
  IntMatrix mk = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    Int ck = -mk.trace();
    if (ck % Int(k) != 0) throw error(errc::internal, "char_poly: inexact division");
    ck /= Int(k);
    c[k] = ck;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += ck;
  }
  return c;
}

}  // namespace catent
