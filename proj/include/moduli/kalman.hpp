#pragma once

// Kalman codes and the controllability canonical form of cc systems.

#include <utility>
#include <vector>

#include "moduli/kalman_code.hpp"
#include "moduli/linear_system.hpp"

namespace moduli {

namespace detail {

// Incrementally maintained row-echelon basis, for "is v independent of
// everything seen so far" queries.
template <class S>
class SpanTracker {
 public:
  explicit SpanTracker(Index dim) : dim_(dim) {}

  // Adds v if it is independent of the current span; reports whether it was.
  bool add(Mat<S> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const S coeff = v(pivots_[r], 0);
      if (!detail::is_zero(coeff)) v -= coeff * rows_[r];
    }
    Index piv = 0;
    while (piv < dim_ && detail::is_zero(v(piv, 0))) ++piv;
    if (piv == dim_) return false;
    const S lead = v(piv, 0);
    v /= lead;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const S coeff = rows_[r](piv, 0);
      if (!detail::is_zero(coeff)) rows_[r] -= coeff * v;
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

  Index size() const { return static_cast<Index>(rows_.size()); }

 private:
  Index dim_;
  std::vector<Mat<S>> rows_;
  std::vector<Index> pivots_;
};

template <class S>
void require_controllable(const LinearSystem<S>& sys) {
  if (!is_controllable(sys)) throw Error(ErrorCode::NotControllable, "system is not completely controllable");
}

}  // namespace detail

// Box (i, j) is black when AⁱB_j is independent of every AᵏB_l with
// (k, l) < (i, j) lexicographically. Throws NotControllable.
template <class S>
KalmanCode kalman_code(const LinearSystem<S>& sys) {
  const Index n = sys.n(), m = sys.m();
  detail::SpanTracker<S> span(n);
  std::vector<std::pair<Index, Index>> boxes;
  Mat<S> power = sys.B();  // columns AⁱB_j for the current i
  for (Index i = 0; i < n && span.size() < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      if (span.add(power.col(j))) boxes.emplace_back(i, j);
    }
    power = sys.A() * power;
  }
  if (static_cast<Index>(boxes.size()) != n) {
    throw Error(ErrorCode::NotControllable, "system is not completely controllable");
  }
  return KalmanCode::from_boxes(m, n, boxes);
}

// The black-box vectors grouped by column: for t = 1..k the vectors
// A⁰B_{j_t}, …, A^{p_t−1}B_{j_t}, as the columns of an n×n matrix.
template <class S>
Mat<S> kalman_basis(const LinearSystem<S>& sys, const KalmanCode& code) {
  const Index n = sys.n();
  Mat<S> basis(n, n);
  Index col = 0;
  const auto cols = code.columns();
  const auto heights = code.column_heights();
  for (std::size_t t = 0; t < cols.size(); ++t) {
    Mat<S> v = sys.B().col(cols[t]);
    for (Index s = 0; s < heights[t]; ++s) {
      basis.col(col++) = v;
      v = sys.A() * v;
    }
  }
  return basis;
}

template <class S>
struct CanonicalForm {
  Mat<S> g;               // base change with system = g·Σ
  LinearSystem<S> system;  // (A′, B′, C′)
  KalmanCode code;
};

// The unique g with g·Σ in controllability canonical form:
//   B′_{j_κ(t)} = e_{h_κ(t−1)+1},   A′ e_i = e_{i+1} for i ∉ {h_κ(1), …, h_κ(k)}.
// g is the inverse of the Kalman basis. Throws NotControllable.
template <class S>
CanonicalForm<S> canonical_form(const LinearSystem<S>& sys) {
  KalmanCode code = kalman_code(sys);
  const Mat<S> basis = kalman_basis(sys, code);
  Mat<S> g = bind_field(sys.field(), inverse(basis));
  // basis columns are independent, so act() never sees a singular g
  LinearSystem<S> image(sys.field(), g * sys.A() * basis, g * sys.B(), sys.C() * basis);
  return {std::move(g), std::move(image), std::move(code)};
}

// cc systems are equivalent iff their canonical forms coincide.
template <class S>
bool equivalent_controllable(const LinearSystem<S>& a, const LinearSystem<S>& b) {
  return canonical_form(a).system == canonical_form(b).system;
}

}  // namespace moduli
