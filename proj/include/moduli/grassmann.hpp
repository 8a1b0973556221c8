#pragma once

// Points of finite Grassmannians Gras_k(N), stored as the row space of a k×N
// matrix in reduced row echelon form, and the two maps from systems into
// Grassmannians:
//
//   ψ : Σ ↦ row space of [B′₁ … B′_m A′₁ … A′_{n−1}]  in Gras_n(m+n−1),
//   γ : Σ ↦ linear relations among the columns of [B′ C′ᵀ A′]  in Gras_{m+p}(m+p+n),
//
// where (A′, B′, C′) is the controllability canonical form. Gras_{m+p}(∞) is
// handled by truncation: a point lives at ambient size m+p+n and compares
// with larger ambients after zero-column padding.

#include <algorithm>
#include <optional>
#include <vector>

#include "moduli/kalman.hpp"

namespace moduli {

template <class S>
class GrassmannPoint {
 public:
  GrassmannPoint(Field field, Mat<S> rref, std::vector<Index> pivots)
      : field_(field), rep_(std::move(rref)), pivots_(std::move(pivots)) {}

  const Field& field() const { return field_; }
  Index k() const { return rep_.rows(); }
  Index ambient() const { return rep_.cols(); }
  const Mat<S>& rep() const { return rep_; }
  MultiIndex pivots() const { return MultiIndex(pivots_, ambient()); }

  // Plücker coordinate: the minor on the columns of `cols`.
  S plucker(const MultiIndex& cols) const {
    std::vector<Index> rows(static_cast<std::size_t>(k()));
    for (Index i = 0; i < k(); ++i) rows[static_cast<std::size_t>(i)] = i;
    return minor_det(rep_, rows, cols.positions());
  }

  // The same subspace inside a larger ambient space (zero columns appended).
  GrassmannPoint padded(Index ambient_size) const {
    if (ambient_size < ambient()) throw Error(ErrorCode::DimensionMismatch, "cannot shrink the ambient space");
    Mat<S> wide = zeros<S>(field_, k(), ambient_size);
    wide.leftCols(ambient()) = rep_;
    return GrassmannPoint(field_, std::move(wide), pivots_);
  }

  friend bool operator==(const GrassmannPoint& a, const GrassmannPoint& b) {
    return a.field_ == b.field_ && equal(a.rep_, b.rep_);
  }

 private:
  Field field_;
  Mat<S> rep_;
  std::vector<Index> pivots_;
};

// Equality after embedding both points in the larger ambient space.
template <class S>
bool same_subspace(const GrassmannPoint<S>& a, const GrassmannPoint<S>& b) {
  const Index n = std::max(a.ambient(), b.ambient());
  return a.padded(n) == b.padded(n);
}

// Canonical representative of the row space of m. Throws RankDeficient
// unless m has full row rank.
template <class Derived>
GrassmannPoint<typename Derived::Scalar> point_from_matrix(const Field& field, const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  auto ech = rref_with_pivots(m);
  if (static_cast<Index>(ech.pivots.size()) != m.rows()) {
    throw Error(ErrorCode::RankDeficient, "matrix rows are linearly dependent");
  }
  return GrassmannPoint<S>(field, bind_field(field, std::move(ech.reduced)), std::move(ech.pivots));
}

// d_i = first column at which the span of the leading columns reaches
// dimension i. Computed column by column, independently of the echelon pivots.
template <class S>
MultiIndex schubert_cell_of(const GrassmannPoint<S>& point) {
  detail::SpanTracker<S> span(point.k());
  std::vector<Index> jumps;
  for (Index c = 0; c < point.ambient(); ++c) {
    if (span.add(point.rep().col(c))) jumps.push_back(c);
  }
  return MultiIndex(std::move(jumps), point.ambient());
}

// The n×(m+n−1) matrix [B₁ … B_m A₁ … A_{n−1}].
template <class S>
Mat<S> cell_matrix(const LinearSystem<S>& sys) {
  const Index m = sys.m(), n = sys.n();
  Mat<S> out = zeros<S>(sys.field(), n, std::max<Index>(m + n - 1, 0));
  if (n == 0) return out;
  out.leftCols(m) = sys.B();
  if (n > 1) out.rightCols(n - 1) = sys.A().leftCols(n - 1);
  return out;
}

// ψ(Σ) ∈ Gras_n(m+n−1). Constant on GL_n-orbits. Throws NotControllable.
template <class S>
GrassmannPoint<S> psi(const LinearSystem<S>& sys) {
  const auto cf = canonical_form(sys);
  return point_from_matrix(sys.field(), cell_matrix(cf.system));
}

struct CellLayout {
  KalmanCode code;
  // pinned[x] = basis vector index pinned in column x, or -1 if free
  std::vector<Index> pinned;
  // free entries (row, column) in column-major order
  std::vector<std::pair<Index, Index>> free;
};

// Shape of the cell representatives of S_I inside Gras_n(m+n−1): the columns
// in I are pinned to basis vectors (e_{h_κ(t−1)+1} for input columns,
// e_{c+1} for column m+c), every other column ranges over the span of the
// pinned columns to its left. Throws InvalidMultiIndex.
inline CellLayout cell_layout(const MultiIndex& index, Index m, Index n) {
  CellLayout out{code_from_multiindex(index, m, n), {}, {}};
  const Index width = std::max<Index>(m + n - 1, 0);
  out.pinned.assign(static_cast<std::size_t>(width), -1);
  const auto cols = out.code.columns();
  const auto h = out.code.prefix_sums();
  for (std::size_t t = 0; t < cols.size(); ++t) out.pinned[static_cast<std::size_t>(cols[t])] = h[t];
  for (Index x = m; x < width; ++x) {
    if (index.contains(x)) out.pinned[static_cast<std::size_t>(x)] = x - m + 1;
  }
  std::vector<Index> seen;
  for (Index x = 0; x < width; ++x) {
    const Index pin = out.pinned[static_cast<std::size_t>(x)];
    if (pin >= 0) {
      seen.insert(std::upper_bound(seen.begin(), seen.end(), pin), pin);
    } else {
      for (Index row : seen) out.free.emplace_back(row, x);
    }
  }
  return out;
}

// A cc system whose ψ-image is the cell point with the given free entries,
// completed by an arbitrary last column of A and an arbitrary C.
//
// For n ≥ 4 some cell points are not reached this way (the construction can
// produce a system with a different Kalman code); those throw CellNotReached.
template <class S>
LinearSystem<S> psi_cell_preimage(const Field& field, const MultiIndex& index, Index m, Index n,
                                  const std::vector<S>& free_values, const Mat<S>& c, const Mat<S>& a_last) {
  const CellLayout layout = cell_layout(index, m, n);
  if (free_values.size() != layout.free.size()) {
    throw Error(ErrorCode::ShapeMismatch, "cell S_" + index.to_string() + " has " +
                                              std::to_string(layout.free.size()) + " free entries");
  }
  if (c.cols() != n || a_last.rows() != n || a_last.cols() != (n > 0 ? 1 : 0)) {
    throw Error(ErrorCode::ShapeMismatch, "C must be p×n and the last column of A n×1");
  }
  const S one = ScalarTraits<S>::from_int(field, 1);
  Mat<S> cell = zeros<S>(field, n, std::max<Index>(m + n - 1, 0));
  for (std::size_t x = 0; x < layout.pinned.size(); ++x) {
    if (layout.pinned[x] >= 0) cell(layout.pinned[x], static_cast<Index>(x)) = one;
  }
  for (std::size_t i = 0; i < free_values.size(); ++i) {
    cell(layout.free[i].first, layout.free[i].second) = free_values[i];
  }
  Mat<S> a = zeros<S>(field, n, n);
  if (n > 0) {
    a.leftCols(n - 1) = cell.rightCols(n - 1);
    a.col(n - 1) = a_last;
  }
  LinearSystem<S> sys(field, std::move(a), cell.leftCols(m), c);
  if (!(kalman_code(sys) == layout.code)) {
    throw Error(ErrorCode::CellNotReached, "free entries leave the Kalman stratum of " + index.to_string());
  }
  return sys;
}

template <class S>
struct InfiniteGrassmannPoint {
  GrassmannPoint<S> point;  // (m+p)-plane in ambient size ≥ m+p+stratum
  Index m = 0;
  Index p = 0;
  Index stratum = 0;
};

namespace detail {

template <class S>
InfiniteGrassmannPoint<S> relation_plane(const LinearSystem<S>& sys) {
  const Mat<S> l = hstack(hstack(sys.B(), Mat<S>(sys.C().transpose())), sys.A());
  if (rank(l) != sys.n()) throw Error(ErrorCode::RankDeficient, "[B Cᵀ A] does not have rank n");
  return {point_from_matrix(sys.field(), kernel_basis(l)), sys.m(), sys.p(), sys.n()};
}

}  // namespace detail

// γ(Σ): the relations among the columns of [B Cᵀ A], an (m+p)-plane in
// Gras_{m+p}(m+p+n). cc systems are first brought to canonical form so that
// the point only depends on the orbit; other systems are used as given and
// must have rank [B Cᵀ A] = n (else RankDeficient).
template <class S>
InfiniteGrassmannPoint<S> gamma(const LinearSystem<S>& sys) {
  if (is_controllable(sys)) return detail::relation_plane(canonical_form(sys).system);
  return detail::relation_plane(sys);
}

// The dual embedding: γ of the (cc) dual system, with the input and output
// column blocks swapped back so positions 1..m again belong to B.
// Throws NotControllable unless Σ is co.
template <class S>
InfiniteGrassmannPoint<S> gamma_observable(const LinearSystem<S>& sys) {
  const auto dual = dualize(sys);
  detail::require_controllable(dual);
  auto plane = detail::relation_plane(canonical_form(dual).system);
  const Index m = sys.m(), p = sys.p(), n = sys.n();
  std::vector<Index> order;
  for (Index i = 0; i < m; ++i) order.push_back(p + i);
  for (Index i = 0; i < p; ++i) order.push_back(i);
  for (Index i = 0; i < n; ++i) order.push_back(m + p + i);
  return {point_from_matrix(sys.field(), select_columns(plane.point.rep(), order)), m, p, n};
}

struct LocusMembership {
  bool in_cc = false;
  bool in_co = false;
  bool in_canonical = false;
};

namespace detail {

// Some (m+p)-minor containing `required` is invertible iff those columns are
// independent (the rows of rep are, so any independent set of columns
// completes to a basis of F^{m+p}).
template <class S>
bool completes_to_invertible_minor(const GrassmannPoint<S>& point, std::vector<Index> required) {
  std::sort(required.begin(), required.end());
  required.erase(std::unique(required.begin(), required.end()), required.end());
  return rank(select_columns(point.rep(), required)) == static_cast<Index>(required.size());
}

}  // namespace detail

// Membership in the open sets X_I with I ⊇ {m+1..m+p, m+p+n} (cc locus) and
// X_J with J ⊇ {1..m, m+p+n} (co locus). Throws DimensionMismatch.
template <class S>
LocusMembership locus_membership(const InfiniteGrassmannPoint<S>& pt, Index m, Index p) {
  if (pt.point.k() != m + p || pt.m != m || pt.p != p || pt.point.ambient() < m + p + pt.stratum) {
    throw Error(ErrorCode::DimensionMismatch, "point is not an (m+p)-plane of this type");
  }
  const Index last = m + p + pt.stratum - 1;
  std::vector<Index> cc_cols, co_cols;
  for (Index i = m; i < m + p; ++i) cc_cols.push_back(i);
  for (Index i = 0; i < m; ++i) co_cols.push_back(i);
  if (last >= 0) {
    cc_cols.push_back(last);
    co_cols.push_back(last);
  }
  LocusMembership out;
  out.in_cc = detail::completes_to_invertible_minor(pt.point, cc_cols);
  out.in_co = detail::completes_to_invertible_minor(pt.point, co_cols);
  out.in_canonical = out.in_cc && out.in_co;
  return out;
}

// n such that the point lies in the cc locus at ambient size m+p+n: the last
// nonzero column sits at position m+p+n. Throws NotInLocus.
template <class S>
Index stratum_dimension(const InfiniteGrassmannPoint<S>& pt) {
  const auto& rep = pt.point.rep();
  Index last = rep.cols() - 1;
  while (last >= 0 && is_zero_matrix(rep.col(last))) --last;
  const Index n = std::max<Index>(last + 1 - (pt.m + pt.p), 0);
  InfiniteGrassmannPoint<S> probe{pt.point, pt.m, pt.p, n};
  if (!locus_membership(probe, pt.m, pt.p).in_cc) {
    throw Error(ErrorCode::NotInLocus, "point is outside the controllable locus");
  }
  return n;
}

}  // namespace moduli
