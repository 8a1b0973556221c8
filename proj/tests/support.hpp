#pragma once

// Generators, exhaustive sweeps and independent oracles shared by the tests.
// The oracles deliberately avoid the library's elimination routines.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "moduli/counting.hpp"
#include "moduli/grassmann.hpp"
#include "moduli/kalman.hpp"
#include "moduli/quiver.hpp"
#include "moduli/realization.hpp"

namespace moduli::test {

inline Field QQ() { return Field::rationals(); }
inline Field GF(std::uint32_t q) { return Field::prime(q); }

template <class S>
Mat<S> mat(const Field& f, std::initializer_list<std::initializer_list<long long>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
  Mat<S> out = zeros<S>(f, r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long long v : row) out(i, j++) = ScalarTraits<S>::from_int(f, v);
    ++i;
  }
  return out;
}

template <class S>
LinearSystem<S> sys1(const Field& f, long long a, long long b, long long c) {
  return LinearSystem<S>(f, mat<S>(f, {{a}}), mat<S>(f, {{b}}), mat<S>(f, {{c}}));
}

template <class S>
S draw_scalar(const Field& f, std::mt19937_64& rng, int range = 3) {
  if (f.is_prime_field()) {
    return ScalarTraits<S>::from_int(
        f, static_cast<long long>(std::uniform_int_distribution<std::uint32_t>(0, f.characteristic() - 1)(rng)));
  }
  return ScalarTraits<S>::from_int(f, std::uniform_int_distribution<long long>(-range, range)(rng));
}

template <class S>
Mat<S> random_matrix(const Field& f, Index rows, Index cols, std::mt19937_64& rng, int range = 3) {
  Mat<S> out = zeros<S>(f, rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out(i, j) = draw_scalar<S>(f, rng, range);
  }
  return out;
}

template <class S>
Mat<S> random_invertible(const Field& f, Index n, std::mt19937_64& rng) {
  for (;;) {
    Mat<S> g = random_matrix<S>(f, n, n, rng);
    if (rank(g) == n) return g;
  }
}

template <class S>
LinearSystem<S> random_system(const Field& f, Index m, Index n, Index p, std::mt19937_64& rng, int range = 3) {
  return LinearSystem<S>(f, random_matrix<S>(f, n, n, rng, range), random_matrix<S>(f, n, m, rng, range),
                         random_matrix<S>(f, p, n, rng, range));
}

template <class S>
LinearSystem<S> random_cc(const Field& f, Index m, Index n, Index p, std::mt19937_64& rng) {
  for (;;) {
    auto sys = random_system<S>(f, m, n, p, rng);
    if (is_controllable(sys)) return sys;
  }
}

template <class S>
LinearSystem<S> random_canonical(const Field& f, Index m, Index n, Index p, std::mt19937_64& rng) {
  for (;;) {
    auto sys = random_system<S>(f, m, n, p, rng);
    if (classify(sys).canonical) return sys;
  }
}

// Every rows×cols matrix over F_q.
inline void for_each_matrix(const Field& f, Index rows, Index cols, const std::function<void(const Mat<Fp>&)>& visit) {
  const auto q = f.characteristic();
  Mat<Fp> m = zeros<Fp>(f, rows, cols);
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(rows * cols), 0);
  for (;;) {
    for (std::size_t i = 0; i < digits.size(); ++i) m(static_cast<Index>(i)) = Fp(digits[i], q);
    visit(m);
    std::size_t i = 0;
    for (; i < digits.size() && ++digits[i] == q; ++i) digits[i] = 0;
    if (i == digits.size()) return;
  }
}

// Every system of type (m, n, p) over F_q.
inline void for_each_system(const Field& f, Index m, Index n, Index p,
                            const std::function<void(const LinearSystem<Fp>&)>& visit) {
  for_each_matrix(f, n, n, [&](const Mat<Fp>& a) {
    for_each_matrix(f, n, m, [&](const Mat<Fp>& b) {
      for_each_matrix(f, p, n, [&](const Mat<Fp>& c) { visit(LinearSystem<Fp>(f, a, b, c)); });
    });
  });
}

// The small exhaustive sweep over F_2: n ≤ 2, m, p ≤ 2.
inline void for_each_small_f2_system(const std::function<void(const LinearSystem<Fp>&)>& visit) {
  const Field f = GF(2);
  for (Index n = 0; n <= 2; ++n) {
    for (Index m = 0; m <= 2; ++m) {
      for (Index p = 0; p <= 2; ++p) for_each_system(f, m, n, p, visit);
    }
  }
}

// ---- oracles ----

// Laplace expansion along the first row.
template <class S>
S cofactor_det(const Mat<S>& m) {
  const Index n = m.rows();
  if (n == 0) return S(1);
  if (n == 1) return m(0, 0);
  S acc = m(0, 0) - m(0, 0);
  for (Index j = 0; j < n; ++j) {
    Mat<S> minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r) {
      for (Index c = 0, cc = 0; c < n; ++c) {
        if (c != j) minor(r - 1, cc++) = m(r, c);
      }
    }
    const S term = m(0, j) * cofactor_det(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

inline void for_each_subset(Index n, Index k, const std::function<void(const std::vector<Index>&)>& visit) {
  std::vector<Index> s;
  std::function<void(Index)> rec = [&](Index start) {
    if (static_cast<Index>(s.size()) == k) {
      visit(s);
      return;
    }
    for (Index i = start; i < n; ++i) {
      s.push_back(i);
      rec(i + 1);
      s.pop_back();
    }
  };
  rec(0);
}

template <class S>
bool is_zero_scalar(const S& x) {
  return ScalarTraits<S>::is_zero(x);
}

// Largest k with a nonzero k×k minor.
template <class S>
Index minor_rank(const Mat<S>& m) {
  for (Index k = std::min(m.rows(), m.cols()); k > 0; --k) {
    bool found = false;
    for_each_subset(m.rows(), k, [&](const std::vector<Index>& rows) {
      if (found) return;
      for_each_subset(m.cols(), k, [&](const std::vector<Index>& cols) {
        if (found) return;
        Mat<S> sub(k, k);
        for (Index i = 0; i < k; ++i) {
          for (Index j = 0; j < k; ++j) sub(i, j) = m(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        }
        found = !is_zero_scalar(cofactor_det(sub));
      });
    });
    if (found) return k;
  }
  return 0;
}

// log_q of the number of distinct vectors in the row span.
inline Index span_rank(const Mat<Fp>& m, std::uint32_t q) {
  std::set<std::vector<long long>> span;
  std::vector<std::uint32_t> coef(static_cast<std::size_t>(m.rows()), 0);
  for (;;) {
    std::vector<long long> v(static_cast<std::size_t>(m.cols()), 0);
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        v[static_cast<std::size_t>(j)] = (v[static_cast<std::size_t>(j)] + coef[static_cast<std::size_t>(i)] * m(i, j).value()) % q;
      }
    }
    span.insert(v);
    std::size_t i = 0;
    for (; i < coef.size() && ++coef[i] == q; ++i) coef[i] = 0;
    if (i == coef.size()) break;
  }
  Index r = 0;
  for (std::size_t size = 1; size < span.size(); size *= q) ++r;
  return r;
}

inline BigInt binomial(Index a, Index b) {
  BigInt out = 1;
  for (Index i = 0; i < b; ++i) out = out * (a - i) / (i + 1);
  return out;
}

inline BigInt gl_count_bruteforce(Index n, std::uint32_t q) {
  BigInt count = 0;
  for_each_matrix(GF(q), n, n, [&](const Mat<Fp>& g) {
    if (!is_zero_scalar(cofactor_det(g))) ++count;
  });
  return count;
}

// Number of b-dimensional subspaces of F_q^a: independent ordered b-tuples in
// F_q^a divided by those in F_q^b.
inline BigInt subspace_count_bruteforce(Index a, Index b, std::uint32_t q) {
  auto tuples = [&](Index dim) {
    BigInt count = 0;
    for_each_matrix(GF(q), b, dim, [&](const Mat<Fp>& rows) {
      if (span_rank(rows, q) == b) ++count;
    });
    return count;
  };
  return tuples(a) / tuples(b);
}

// Complete homogeneous symmetric polynomial h_d(x_1..x_m), by recursion on m.
inline BigInt complete_homogeneous(const std::vector<BigInt>& xs, std::size_t from, int d) {
  if (d == 0) return 1;
  if (from == xs.size()) return 0;
  BigInt total = 0;
  BigInt power = 1;
  for (int e = 0; e <= d; ++e) {
    total += power * complete_homogeneous(xs, from + 1, d - e);
    power *= xs[from];
  }
  return total;
}

// Number of cc (A, B) pairs over F_q, by brute force with the span oracle.
inline BigInt cc_pairs_bruteforce(Index m, Index n, std::uint32_t q) {
  BigInt count = 0;
  const Field f = GF(q);
  for_each_matrix(f, n, n, [&](const Mat<Fp>& a) {
    for_each_matrix(f, n, m, [&](const Mat<Fp>& b) {
      // rows of the transposed Krylov matrix
      Mat<Fp> k = zeros<Fp>(f, n * m, n);
      Mat<Fp> power = identity<Fp>(f, n);
      for (Index i = 0; i < n; ++i) {
        k.block(i * m, 0, m, n) = (power * b).transpose();
        power = Mat<Fp>(power * a);
      }
      if (span_rank(k, q) == n) ++count;
    });
  });
  return count;
}


// Black boxes (i, j) by the minor-rank oracle: AⁱB_j raises the rank of all
// earlier AᵏB_l in lexicographic order.
template <class S>
std::vector<std::pair<Index, Index>> black_boxes_oracle(const LinearSystem<S>& sys) {
  const Index n = sys.n(), m = sys.m();
  std::vector<std::pair<Index, Index>> boxes;
  Mat<S> span = zeros<S>(sys.field(), n, 0);
  Index current = 0;
  Mat<S> power = identity<S>(sys.field(), n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      Mat<S> grown(n, span.cols() + 1);
      grown.leftCols(span.cols()) = span;
      grown.col(span.cols()) = power * sys.B().col(j);
      const Index r = minor_rank(grown);
      if (r > current) boxes.emplace_back(i, j);
      current = r;
      span = grown;
    }
    power = Mat<S>(power * sys.A());
  }
  return boxes;
}

// n×n matrix with column `col` of `base` replaced by v.
template <class S>
Mat<S> replace_column(Mat<S> base, Index col, const Mat<S>& v) {
  base.col(col) = v;
  return base;
}

// Checks a canonical form entry-wise: the B′ and A′ unit-vector columns, g as
// the inverse of the column-grouped black-box basis, and every remaining entry
// of A′ and B′ as a quotient of two n×n minors of [B AB … AⁿB] (Cramer).
template <class S>
bool canonical_structure_holds(const LinearSystem<S>& sys, const CanonicalForm<S>& cf, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const Field& f = sys.field();
  const Index n = sys.n(), m = sys.m();
  const auto& a2 = cf.system.A();
  const auto& b2 = cf.system.B();
  if (!(act(cf.g, sys) == cf.system)) return fail("image is not g·Σ");

  const auto oracle = KalmanCode::from_boxes(m, n, black_boxes_oracle(sys));
  if (!(oracle == cf.code)) return fail("Kalman code differs from the oracle");
  const auto cols = oracle.columns();
  const auto heights = oracle.column_heights();
  const auto h = oracle.prefix_sums();
  const S one = ScalarTraits<S>::from_int(f, 1);
  const S zero = one - one;
  auto unit = [&](Index t) {
    Mat<S> e = Mat<S>::Constant(n, 1, zero);
    e(t, 0) = one;
    return e;
  };

  // bullet 1: B′ columns j_κ(t) are e_{h(t−1)+1}
  for (std::size_t t = 0; t < cols.size(); ++t) {
    if (!equal(b2.col(cols[t]), unit(h[t]))) return fail("B' column " + std::to_string(cols[t] + 1));
  }
  // bullet 2: A′ e_i = e_{i+1} unless i is a partial sum
  std::vector<bool> is_sum(static_cast<std::size_t>(n + 1), false);
  for (std::size_t t = 1; t < h.size(); ++t) is_sum[static_cast<std::size_t>(h[t])] = true;
  for (Index i = 1; i <= n; ++i) {
    if (is_sum[static_cast<std::size_t>(i)]) continue;
    if (!equal(a2.col(i - 1), unit(i))) return fail("A' column " + std::to_string(i));
  }
  // bullet 3: g inverts the black-box basis, whose vectors are listed group-wise
  Mat<S> basis(n, n);
  Index at = 0;
  for (std::size_t t = 0; t < cols.size(); ++t) {
    Mat<S> v = sys.B().col(cols[t]);
    for (Index s = 0; s < heights[t]; ++s) {
      basis.col(at++) = v;
      v = Mat<S>(sys.A() * v);
    }
  }
  if (!equal(Mat<S>(cf.g * basis), identity<S>(f, n))) return fail("g is not the inverse of the Kalman basis");
  const S det = cofactor_det(basis);
  auto cramer = [&](const Mat<S>& v, const Mat<S>& col) {
    for (Index i = 0; i < n; ++i) {
      if (!(cofactor_det(replace_column(basis, i, v)) / det == col(i, 0))) return false;
    }
    return true;
  };
  for (Index j = 0; j < m; ++j) {
    if (!cramer(sys.B().col(j), b2.col(j))) return fail("B' column " + std::to_string(j + 1) + " minors");
  }
  for (std::size_t t = 0; t < cols.size(); ++t) {
    Mat<S> v = sys.B().col(cols[t]);
    for (Index s = 0; s < heights[t]; ++s) v = Mat<S>(sys.A() * v);
    if (!cramer(v, a2.col(h[t + 1] - 1))) return fail("A' column " + std::to_string(h[t + 1]) + " minors");
  }
  return true;
}

}  // namespace moduli::test
