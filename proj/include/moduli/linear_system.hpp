#pragma once

// Linear control systems (A, B, C) of type (m, n, p):
//   dx/dt = A x + B u,   y = C x
// with A n×n, B n×m, C p×n over an exact field. Two systems are equivalent
// when they differ by a state-space base change g: (gAg⁻¹, gB, Cg⁻¹).

#include <string>
#include <vector>

#include "moduli/linalg.hpp"

namespace moduli {

template <class S>
class LinearSystem {
 public:
  LinearSystem(Field field, Mat<S> a, Mat<S> b, Mat<S> c)
      : field_(field), a_(bind_field(field, std::move(a))), b_(bind_field(field, std::move(b))), c_(bind_field(field, std::move(c))) {
    require_field<S>(field_);
    const Index n = a_.rows();
    if (a_.cols() != n || b_.rows() != n || c_.cols() != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "system shapes A " + shape(a_) + ", B " + shape(b_) + ", C " + shape(c_) + " are inconsistent");
    }
  }

  // The zero system of type (m, n, p).
  static LinearSystem zero(Field field, Index m, Index n, Index p) {
    return LinearSystem(field, zeros<S>(field, n, n), zeros<S>(field, n, m), zeros<S>(field, p, n));
  }

  const Field& field() const { return field_; }
  const Mat<S>& A() const { return a_; }
  const Mat<S>& B() const { return b_; }
  const Mat<S>& C() const { return c_; }
  Index m() const { return b_.cols(); }
  Index n() const { return a_.rows(); }
  Index p() const { return c_.rows(); }

  friend bool operator==(const LinearSystem& x, const LinearSystem& y) {
    return x.field_ == y.field_ && equal(x.a_, y.a_) && equal(x.b_, y.b_) && equal(x.c_, y.c_);
  }

 private:
  static std::string shape(const Mat<S>& x) {
    return std::to_string(x.rows()) + "x" + std::to_string(x.cols());
  }

  Field field_;
  Mat<S> a_, b_, c_;
};

struct SystemClass {
  bool cc = false;
  bool co = false;
  bool canonical = false;
  Index rank_c = 0;
  Index rank_o = 0;
};

// [B AB A²B … Aⁿ⁻¹B], n×(nm).
template <class S>
Mat<S> controllability_matrix(const LinearSystem<S>& sys) {
  const Index n = sys.n(), m = sys.m();
  Mat<S> out(n, n * m);
  if (n == 0) return out;
  out.leftCols(m) = sys.B();
  for (Index i = 1; i < n; ++i) {
    out.middleCols(i * m, m) = sys.A() * out.middleCols((i - 1) * m, m);
  }
  return out;
}

// [C; CA; …; CAⁿ⁻¹], (pn)×n.
template <class S>
Mat<S> observability_matrix(const LinearSystem<S>& sys) {
  const Index n = sys.n(), p = sys.p();
  Mat<S> out(p * n, n);
  if (n == 0) return out;
  out.topRows(p) = sys.C();
  for (Index i = 1; i < n; ++i) {
    out.middleRows(i * p, p) = out.middleRows((i - 1) * p, p) * sys.A();
  }
  return out;
}

template <class S>
SystemClass classify(const LinearSystem<S>& sys) {
  SystemClass out;
  out.rank_c = rank(controllability_matrix(sys));
  out.rank_o = rank(observability_matrix(sys));
  out.cc = out.rank_c == sys.n();
  out.co = out.rank_o == sys.n();
  out.canonical = out.cc && out.co;
  return out;
}

template <class S>
bool is_controllable(const LinearSystem<S>& sys) {
  return rank(controllability_matrix(sys)) == sys.n();
}

template <class S>
bool is_observable(const LinearSystem<S>& sys) {
  return rank(observability_matrix(sys)) == sys.n();
}

// g·Σ = (gAg⁻¹, gB, Cg⁻¹). Throws SingularBaseChange unless g is invertible.
template <class S>
LinearSystem<S> act(const Mat<S>& g, const LinearSystem<S>& sys) {
  if (g.rows() != sys.n() || g.cols() != sys.n()) {
    throw Error(ErrorCode::DimensionMismatch, "base change must be n×n");
  }
  Mat<S> g_inv;
  try {
    g_inv = inverse(g);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    throw Error(ErrorCode::SingularBaseChange, "base change matrix is not invertible");
  }
  return LinearSystem<S>(sys.field(), g * sys.A() * g_inv, g * sys.B(), sys.C() * g_inv);
}

// (Aᵀ, Cᵀ, Bᵀ): a system of type (p, n, m). Exchanges controllability and observability.
template <class S>
LinearSystem<S> dualize(const LinearSystem<S>& sys) {
  return LinearSystem<S>(sys.field(), sys.A().transpose(), sys.C().transpose(), sys.B().transpose());
}

// [C Aʲ⁻¹ B] for j = 1..count.
template <class S>
std::vector<Mat<S>> markov_parameters(const LinearSystem<S>& sys, Index count) {
  std::vector<Mat<S>> out;
  out.reserve(static_cast<std::size_t>(std::max<Index>(count, 0)));
  Mat<S> krylov = sys.B();
  for (Index j = 0; j < count; ++j) {
    out.push_back(bind_field(sys.field(), Mat<S>(sys.C() * krylov)));
    if (j + 1 < count) krylov = sys.A() * krylov;
  }
  return out;
}

}  // namespace moduli
