#pragma once

// Exact dense linear algebra over the scalars of scalar.hpp.
//
// Everything here is plain Gauss-Jordan elimination with "first nonzero"
// pivoting: over an exact field any nonzero pivot is as good as another, and
// the choice makes echelon forms and pivot lists deterministic.

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "moduli/error.hpp"
#include "moduli/scalar.hpp"

namespace moduli {

using Index = Eigen::Index;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
struct Echelon {
  Mat<S> reduced;
  std::vector<Index> pivots;  // strictly increasing pivot columns, 0-based
};

namespace detail {

template <class S>
bool is_zero(const S& x) {
  return ScalarTraits<S>::is_zero(x);
}

// 1 in the field of `ref` (for Fp the result inherits the modulus).
template <class S>
S unit_like(const Mat<S>& ref) {
  if (ref.size() == 0) return S(1);
  return ref(0, 0) - ref(0, 0) + S(1);
}

template <class S>
S zero_like(const Mat<S>& ref) {
  if (ref.size() == 0) return S(0);
  return ref(0, 0) - ref(0, 0);
}

// In-place elimination. With `reduce` the result is the reduced row echelon
// form; without it only the forward sweep runs, which is enough for rank.
template <class S>
std::vector<Index> eliminate(Mat<S>& r, bool reduce) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < r.cols() && row < r.rows(); ++col) {
    Index piv = row;
    while (piv < r.rows() && is_zero(r(piv, col))) ++piv;
    if (piv == r.rows()) continue;
    if (piv != row) r.row(piv).swap(r.row(row));
    const S inv = S(1) / r(row, col);
    for (Index c = col; c < r.cols(); ++c) r(row, c) *= inv;
    for (Index i = reduce ? 0 : row + 1; i < r.rows(); ++i) {
      if (i == row || is_zero(r(i, col))) continue;
      const S f = r(i, col);
      for (Index c = col; c < r.cols(); ++c) r(i, c) -= f * r(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

template <class Derived>
Echelon<typename Derived::Scalar> rref_with_pivots(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  Echelon<S> out{Mat<S>(m), {}};
  out.pivots = detail::eliminate(out.reduced, true);
  return out;
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  Mat<S> work(m);
  return static_cast<Index>(detail::eliminate(work, false).size());
}

// Rows form a basis of { v : m * v^T = 0 }.
template <class Derived>
Mat<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  const auto ech = rref_with_pivots(m);
  const Index cols = m.cols();
  const S one = detail::unit_like(ech.reduced);
  const S zero = one - one;

  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  Mat<S> basis = Mat<S>::Constant(cols - static_cast<Index>(ech.pivots.size()), cols, zero);
  Index row = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(row, f) = one;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
      basis(row, ech.pivots[i]) = -ech.reduced(static_cast<Index>(i), f);
    }
    ++row;
  }
  return basis;
}

template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquareSelection, "determinant of a non-square matrix");
  Mat<S> r(m);
  S det = detail::unit_like(r);
  const Index n = r.rows();
  for (Index col = 0; col < n; ++col) {
    Index piv = col;
    while (piv < n && detail::is_zero(r(piv, col))) ++piv;
    if (piv == n) return det - det;
    if (piv != col) {
      r.row(piv).swap(r.row(col));
      det = -det;
    }
    det *= r(col, col);
    const S inv = S(1) / r(col, col);
    for (Index i = col + 1; i < n; ++i) {
      if (detail::is_zero(r(i, col))) continue;
      const S f = r(i, col) * inv;
      for (Index c = col; c < n; ++c) r(i, c) -= f * r(col, c);
    }
  }
  return det;
}

template <class Derived>
Mat<typename Derived::Scalar> submatrix(const Eigen::MatrixBase<Derived>& m,
                                        const std::vector<Index>& rows,
                                        const std::vector<Index>& cols) {
  using S = typename Derived::Scalar;
  Mat<S> out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= m.rows()) {
      throw Error(ErrorCode::IndexOutOfRange, "row index " + std::to_string(rows[i]) + " out of range");
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] < 0 || cols[j] >= m.cols()) {
        throw Error(ErrorCode::IndexOutOfRange, "column index " + std::to_string(cols[j]) + " out of range");
      }
      out(static_cast<Index>(i), static_cast<Index>(j)) = m(rows[i], cols[j]);
    }
  }
  return out;
}

template <class Derived>
Mat<typename Derived::Scalar> select_columns(const Eigen::MatrixBase<Derived>& m,
                                             const std::vector<Index>& cols) {
  std::vector<Index> rows(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) rows[static_cast<std::size_t>(i)] = i;
  return submatrix(m, rows, cols);
}

// Determinant of the square submatrix picked by two strictly increasing index lists.
template <class Derived>
typename Derived::Scalar minor_det(const Eigen::MatrixBase<Derived>& m, const std::vector<Index>& rows,
                                   const std::vector<Index>& cols) {
  if (rows.size() != cols.size()) {
    throw Error(ErrorCode::NonSquareSelection, "minor needs as many rows as columns");
  }
  auto increasing = [](const std::vector<Index>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!increasing(rows) || !increasing(cols)) {
    throw Error(ErrorCode::IndexOutOfRange, "minor indices must be strictly increasing");
  }
  return determinant(submatrix(m, rows, cols));
}

// Throws SingularMatrix when `m` has no inverse.
template <class Derived>
Mat<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  const Index n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::NonSquareSelection, "inverse of a non-square matrix");
  Mat<S> aug(n, 2 * n);
  aug.leftCols(n) = m;
  const S one = detail::unit_like(Mat<S>(m));
  aug.rightCols(n).setConstant(one - one);
  for (Index i = 0; i < n; ++i) aug(i, n + i) = one;
  const auto pivots = detail::eliminate(aug, true);
  if (static_cast<Index>(pivots.size()) < n || (n > 0 && pivots[static_cast<std::size_t>(n - 1)] != n - 1)) {
    throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  }
  return aug.rightCols(n);
}

template <class S>
Mat<S> identity(const Field& f, Index n) {
  const S one = ScalarTraits<S>::from_int(f, 1);
  Mat<S> id = Mat<S>::Constant(n, n, one - one);
  for (Index i = 0; i < n; ++i) id(i, i) = one;
  return id;
}

template <class S>
Mat<S> zeros(const Field& f, Index rows, Index cols) {
  return Mat<S>::Constant(rows, cols, ScalarTraits<S>::from_int(f, 0));
}

// Attach the field to every entry (binds unbound F_q literals).
template <class S>
Mat<S> bind_field(const Field& f, Mat<S> m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = ScalarTraits<S>::bind(f, m(i, j));
  }
  return m;
}

template <class DA, class DB>
bool equal(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (!(a(i, j) == b(i, j))) return false;
    }
  }
  return true;
}

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (!detail::is_zero(m(i, j))) return false;
    }
  }
  return true;
}

template <class S>
Mat<S> hstack(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

template <class S>
Mat<S> vstack(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

}  // namespace moduli
