#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>

#include <Eigen/Core>

#include "projglue/errors.hpp"

namespace projglue {

// Fixed-size square matrix over an exact ring E (BigInt, Rational,
// LaurentPoly). Float work uses Eigen directly; this type exists so that
// group identities can be decided by equality rather than by tolerance.
template <class E, int N>
class ExactMatrix {
 public:
  static_assert(N >= 1 && N <= 4);

  ExactMatrix() { a_.fill(E(0)); }
  ExactMatrix(std::initializer_list<std::initializer_list<E>> rows) {
    a_.fill(E(0));
    if (rows.size() != N) throw Error(ErrorKind::kInvalidInput, "wrong row count");
    int i = 0;
    for (const auto& row : rows) {
      if (row.size() != N) throw Error(ErrorKind::kInvalidInput, "wrong column count");
      int j = 0;
      for (const auto& v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static ExactMatrix identity() {
    ExactMatrix m;
    for (int i = 0; i < N; ++i) m(i, i) = E(1);
    return m;
  }

  E& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * N + j)]; }
  const E& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * N + j)]; }
  static constexpr int size() { return N; }

  friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
    ExactMatrix r;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        E acc(0);
        for (int k = 0; k < N; ++k) acc += x(i, k) * y(k, j);
        r(i, j) = acc;
      }
    }
    return r;
  }
  friend ExactMatrix operator+(const ExactMatrix& x, const ExactMatrix& y) {
    ExactMatrix r;
    for (int i = 0; i < N * N; ++i) r.a_[i] = x.a_[i] + y.a_[i];
    return r;
  }
  friend ExactMatrix operator-(const ExactMatrix& x, const ExactMatrix& y) {
    ExactMatrix r;
    for (int i = 0; i < N * N; ++i) r.a_[i] = x.a_[i] - y.a_[i];
    return r;
  }
  friend ExactMatrix operator*(const E& c, const ExactMatrix& x) {
    ExactMatrix r;
    for (int i = 0; i < N * N; ++i) r.a_[i] = c * x.a_[i];
    return r;
  }
  friend bool operator==(const ExactMatrix& x, const ExactMatrix& y) { return x.a_ == y.a_; }

  // Lexicographic over row-major entries; requires an ordered E.
  friend std::strong_ordering operator<=>(const ExactMatrix& x, const ExactMatrix& y) {
    for (int i = 0; i < N * N; ++i) {
      if (x.a_[i] < y.a_[i]) return std::strong_ordering::less;
      if (y.a_[i] < x.a_[i]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  ExactMatrix transpose() const {
    ExactMatrix r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  E determinant() const { return det_rec(*this, N); }

  // Inverse over a field (Rational). Uses the adjugate; fine at N <= 4.
  ExactMatrix inverse() const {
    E d = determinant();
    if (d == E(0)) throw Error(ErrorKind::kInvalidInput, "singular matrix");
    ExactMatrix r;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        E c = cofactor(j, i);
        r(i, j) = c / d;
      }
    }
    return r;
  }

  template <class F>
  Eigen::Matrix<double, N, N> to_eigen(F&& eval) const {
    Eigen::Matrix<double, N, N> m;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) m(i, j) = eval((*this)(i, j));
    return m;
  }

 private:
  E cofactor(int row, int col) const {
    std::array<E, 16> minor;
    int n = N - 1;
    int r = 0;
    for (int i = 0; i < N; ++i) {
      if (i == row) continue;
      int c = 0;
      for (int j = 0; j < N; ++j) {
        if (j == col) continue;
        minor[r * 4 + c] = (*this)(i, j);
        ++c;
      }
      ++r;
    }
    E d = n == 0 ? E(1) : det_flat(minor, n);
    return ((row + col) % 2 == 0) ? d : E(0) - d;
  }

  static E det_rec(const ExactMatrix& m, int n) {
    std::array<E, 16> flat;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) flat[i * 4 + j] = m(i, j);
    return det_flat(flat, n);
  }

  // Laplace expansion along the first row on a 4-stride buffer.
  static E det_flat(const std::array<E, 16>& m, int n) {
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[5] - m[1] * m[4];
    E acc(0);
    for (int col = 0; col < n; ++col) {
      std::array<E, 16> sub;
      for (int i = 1; i < n; ++i) {
        int c = 0;
        for (int j = 0; j < n; ++j) {
          if (j == col) continue;
          sub[(i - 1) * 4 + c] = m[i * 4 + j];
          ++c;
        }
      }
      E term = m[col] * det_flat(sub, n - 1);
      if (col % 2 == 0) acc += term;
      else acc -= term;
    }
    return acc;
  }

  std::array<E, static_cast<std::size_t>(N * N)> a_;
};

}  // namespace projglue
