#pragma once
// Dense matrices over an exact field plus Gaussian-elimination services.

#include <optional>
#include <stdexcept>
#include <vector>

#include "topode/field.hpp"

namespace topode {

template <class T>
class Mat {
 public:
  int r = 0, c = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int rows, int cols) : r(rows), c(cols), a(static_cast<size_t>(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }

  bool is_zero() const {
    for (const auto& x : a)
      if (!x.is_zero()) return false;
    return true;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    if (x.r != y.r || x.c != y.c) throw std::invalid_argument("Mat: shape mismatch");
    Mat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
    return z;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    if (x.r != y.r || x.c != y.c) throw std::invalid_argument("Mat: shape mismatch");
    Mat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
  }
  friend Mat operator-(const Mat& x) {
    Mat z = x;
    for (auto& v : z.a) v = -v;
    return z;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.c != y.r) throw std::invalid_argument("Mat: shape mismatch");
    Mat z(x.r, y.c);
    for (int i = 0; i < x.r; ++i)
      for (int k = 0; k < x.c; ++k) {
        const T& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (int j = 0; j < y.c; ++j) {
          const T& ykj = y(k, j);
          if (!ykj.is_zero()) z(i, j) += xik * ykj;
        }
      }
    return z;
  }
  friend Mat operator*(const T& s, const Mat& x) {
    Mat z = x;
    for (auto& v : z.a) v = s * v;
    return z;
  }
  Mat& operator+=(const Mat& o) { return *this = *this + o; }
  Mat& operator-=(const Mat& o) { return *this = *this - o; }

  friend bool operator==(const Mat& x, const Mat& y) { return x.r == y.r && x.c == y.c && x.a == y.a; }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

  T trace() const {
    T t(0);
    for (int i = 0; i < r && i < c; ++i) t += (*this)(i, i);
    return t;
  }
  Mat transpose() const {
    Mat z(c, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) z(j, i) = (*this)(i, j);
    return z;
  }
};

template <class T>
Mat<T> bracket(const Mat<T>& x, const Mat<T>& y) {
  return x * y - y * x;
}

// Row-reduce [A | rhs...] in place; returns pivot columns of A.
template <class T>
std::vector<int> row_reduce(Mat<T>& m, int acols) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < acols && row < m.r; ++col) {
    int p = -1;
    for (int i = row; i < m.r; ++i)
      if (!m(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.c; ++j) std::swap(m(p, j), m(row, j));
    T inv = m(row, col).inv();
    for (int j = 0; j < m.c; ++j) m(row, j) = inv * m(row, j);
    for (int i = 0; i < m.r; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      T f = m(i, col);
      for (int j = 0; j < m.c; ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Solve A x = b exactly; nullopt when inconsistent.  Free variables get 0.
template <class T>
std::optional<std::vector<T>> solve_linear(const Mat<T>& A, const std::vector<T>& b) {
  if (static_cast<int>(b.size()) != A.r) throw std::invalid_argument("solve_linear: shape");
  Mat<T> m(A.r, A.c + 1);
  for (int i = 0; i < A.r; ++i) {
    for (int j = 0; j < A.c; ++j) m(i, j) = A(i, j);
    m(i, A.c) = b[i];
  }
  auto pivots = row_reduce(m, A.c);
  for (int i = static_cast<int>(pivots.size()); i < A.r; ++i)
    if (!m(i, A.c).is_zero()) return std::nullopt;
  std::vector<T> x(A.c, T(0));
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = m(static_cast<int>(k), A.c);
  return x;
}

// Basis of the nullspace of A.
template <class T>
std::vector<std::vector<T>> nullspace(const Mat<T>& A) {
  Mat<T> m = A;
  auto pivots = row_reduce(m, A.c);
  std::vector<bool> is_pivot(A.c, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (int j = 0; j < A.c; ++j) {
    if (is_pivot[j]) continue;
    std::vector<T> v(A.c, T(0));
    v[j] = T(1);
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(static_cast<int>(k), j);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
Mat<T> mat_inverse(const Mat<T>& A) {
  if (A.r != A.c) throw std::invalid_argument("mat_inverse: not square");
  Mat<T> m(A.r, 2 * A.c);
  for (int i = 0; i < A.r; ++i) {
    for (int j = 0; j < A.c; ++j) m(i, j) = A(i, j);
    m(i, A.c + i) = T(1);
  }
  auto pivots = row_reduce(m, A.c);
  if (static_cast<int>(pivots.size()) != A.c) throw std::domain_error("mat_inverse: singular");
  Mat<T> inv(A.r, A.c);
  for (int i = 0; i < A.r; ++i)
    for (int j = 0; j < A.c; ++j) inv(i, j) = m(i, A.c + j);
  return inv;
}

// Reusable exact solver for A x = b with fixed A: row-reduces [A | I] once,
// then each solve is a single matrix-vector product with the recorded row
// operations.
template <class T>
class LinSolver {
 public:
  LinSolver() = default;
  explicit LinSolver(const Mat<T>& A) : rows_(A.r), cols_(A.c) {
    red_ = Mat<T>(A.r, A.c + A.r);
    for (int i = 0; i < A.r; ++i) {
      for (int j = 0; j < A.c; ++j) red_(i, j) = A(i, j);
      red_(i, A.c + i) = T(1);
    }
    pivots_ = row_reduce(red_, A.c);
  }

  int rank() const { return static_cast<int>(pivots_.size()); }
  const std::vector<int>& pivots() const { return pivots_; }

  // Free variables get 0; nullopt when inconsistent.
  std::optional<std::vector<T>> solve(const std::vector<T>& b) const {
    if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("LinSolver: shape");
    std::vector<T> y(rows_, T(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < rows_; ++j) {
        const T& e = red_(i, cols_ + j);
        if (!e.is_zero() && !b[j].is_zero()) y[i] += e * b[j];
      }
    for (int i = rank(); i < rows_; ++i)
      if (!y[i].is_zero()) return std::nullopt;
    std::vector<T> x(cols_, T(0));
    for (int k = 0; k < rank(); ++k) x[pivots_[k]] = y[k];
    return x;
  }

 private:
  Mat<T> red_;
  std::vector<int> pivots_;
  int rows_ = 0, cols_ = 0;
};

using FMat = Mat<FieldElem>;

}  // namespace topode
