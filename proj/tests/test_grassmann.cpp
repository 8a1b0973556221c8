#include <doctest.h>

#include "support.hpp"

using namespace moduli;
using namespace moduli::test;

namespace {

template <class S>
Field field_for() {
  if constexpr (std::is_same_v<S, Fp>) return GF(3);
  else return QQ();
}

// Some (m+p)-minor on a column set containing `required` is nonzero (cofactor oracle).
template <class S>
bool has_qualifying_minor(const GrassmannPoint<S>& pt, const std::vector<Index>& required) {
  bool found = false;
  for_each_subset(pt.ambient(), pt.k(), [&](const std::vector<Index>& cols) {
    if (found) return;
    for (Index r : required) {
      if (std::find(cols.begin(), cols.end(), r) == cols.end()) return;
    }
    found = !is_zero_scalar(cofactor_det(select_columns(pt.rep(), cols)));
  });
  return found;
}

}  // namespace

TEST_CASE("points from matrices") {
  const auto a = point_from_matrix(QQ(), mat<Rational>(QQ(), {{2, 0}, {0, 3}}));
  CHECK(equal(a.rep(), identity<Rational>(QQ(), 2)));
  CHECK(a.pivots().one_based() == std::vector<Index>{1, 2});
  const auto b = point_from_matrix(QQ(), mat<Rational>(QQ(), {{0, 1, 5}}));
  CHECK(equal(b.rep(), mat<Rational>(QQ(), {{0, 1, 5}})));
  CHECK(b.pivots().one_based() == std::vector<Index>{2});
  CHECK(point_from_matrix(QQ(), mat<Rational>(QQ(), {{1, 1}, {0, 1}})) ==
        point_from_matrix(QQ(), mat<Rational>(QQ(), {{1, 0}, {0, 1}})));
  try {
    point_from_matrix(QQ(), mat<Rational>(QQ(), {{1, 2}, {2, 4}}));
    FAIL("dependent rows accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankDeficient);
  }
  CHECK(same_subspace(b, b.padded(5)));
  CHECK_FALSE(b.padded(5) == b);
  CHECK_THROWS_AS(b.padded(2), Error);
}

TEST_CASE("Schubert cells") {
  const auto id = point_from_matrix(QQ(), identity<Rational>(QQ(), 3)).padded(5);
  CHECK(schubert_cell_of(id).one_based() == std::vector<Index>{1, 2, 3});
  CHECK(schubert_cell_of(point_from_matrix(QQ(), mat<Rational>(QQ(), {{0, 1, 5}}))).one_based() ==
        std::vector<Index>{2});
}

TEST_CASE_TEMPLATE("Schubert cell is the pivot set, Plücker coordinates are minors", S, Rational, Fp) {
  const Field f = field_for<S>();
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const Index k = 1 + static_cast<Index>(rng() % 3);
    const Index n = k + static_cast<Index>(rng() % 3);
    Mat<S> m = random_matrix<S>(f, k, n, rng, 2);
    if (rank(m) < k) continue;
    // random row operations do not move the point
    const auto pt = point_from_matrix(f, m);
    const auto moved = point_from_matrix(f, Mat<S>(random_invertible<S>(f, k, rng) * m));
    CHECK(pt == moved);
    CHECK(schubert_cell_of(pt) == pt.pivots());
    const auto cell = schubert_cell_of(pt).positions();
    CHECK_FALSE(is_zero_scalar(pt.plucker(schubert_cell_of(pt))));
    for (const auto& cols : all_multi_indices(n, k)) {
      CHECK(pt.plucker(cols) == cofactor_det(select_columns(pt.rep(), cols.positions())));
      // no nonzero Plücker coordinate precedes the cell entry-wise
      if (!is_zero_scalar(pt.plucker(cols))) {
        for (std::size_t i = 0; i < cell.size(); ++i) CHECK(cols.positions()[i] >= cell[i]);
      }
    }
  }
}

TEST_CASE("psi examples") {
  const LinearSystem<Rational> s(QQ(), mat<Rational>(QQ(), {{3}}), mat<Rational>(QQ(), {{1, 0}}), mat<Rational>(QQ(), {{1}}));
  const auto pt = psi(s);
  CHECK(equal(pt.rep(), mat<Rational>(QQ(), {{1, 0}})));
  std::mt19937_64 rng(3);
  const auto t = random_cc<Rational>(QQ(), 1, 2, 1, rng);
  CHECK(equal(psi(t).rep(), identity<Rational>(QQ(), 2)));
  CHECK_THROWS_AS(psi(sys1<Rational>(QQ(), 1, 0, 1)), Error);
}

TEST_CASE_TEMPLATE("psi and gamma are orbit invariants", S, Rational, Fp) {
  const Field f = field_for<S>();
  std::mt19937_64 rng(8);
  for (int t = 0; t < 60; ++t) {
    const Index m = 1 + static_cast<Index>(rng() % 3);
    const Index n = 1 + static_cast<Index>(rng() % 3);
    const Index p = static_cast<Index>(rng() % 3);
    const auto s = random_cc<S>(f, m, n, p, rng);
    const auto moved = act(random_invertible<S>(f, n, rng), s);
    CHECK(psi(moved) == psi(s));
    CHECK(gamma(moved).point == gamma(s).point);
    CHECK(stratum_dimension(gamma(moved)) == n);
  }
}

TEST_CASE("Schubert cell of psi is the Kalman multi-index over F_2") {
  long mismatches = 0;
  for_each_small_f2_system([&](const LinearSystem<Fp>& s) {
    if (!is_controllable(s) || s.m() + s.n() - 1 <= 0) return;
    if (!(schubert_cell_of(psi(s)) == multiindex_from_code(kalman_code(s)))) ++mismatches;
  });
  CHECK(mismatches == 0);
}

TEST_CASE("Schubert cell of psi for n = 3 systems") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const Index m = 1 + static_cast<Index>(rng() % 3);
    const auto s = random_cc<Fp>(GF(2), m, 3, 1, rng);
    CHECK(schubert_cell_of(psi(s)) == multiindex_from_code(kalman_code(s)));
  }
}

TEST_CASE("for n = 4 the cell of psi can differ from the Kalman multi-index") {
  // code j = (1, 2), p = (2, 2): I = {1,2,3,5}; A′e₂ = A²B₁ has an e₄ component
  const Field f = GF(2);
  const LinearSystem<Fp> s(f, mat<Fp>(f, {{0, 1, 0, 0}, {1, 1, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}}),
                           mat<Fp>(f, {{1, 0}, {0, 0}, {0, 1}, {0, 0}}), zeros<Fp>(f, 1, 4));
  const auto code = kalman_code(s);
  CHECK(code.column_heights() == std::vector<Index>{2, 2});
  CHECK(canonical_form(s).system == s);
  const auto index = multiindex_from_code(code);
  CHECK(index.one_based() == std::vector<Index>{1, 2, 3, 5});
  const auto pt = psi(s);
  CHECK(schubert_cell_of(pt).one_based() == std::vector<Index>{1, 2, 3, 4});
  // the I_κ coordinate is still nonzero
  CHECK_FALSE(is_zero_scalar(pt.plucker(index)));
}

TEST_CASE("the Kalman multi-index coordinate of psi is never zero") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const Index m = 1 + static_cast<Index>(rng() % 3);
    const Index n = 1 + static_cast<Index>(rng() % 4);
    const auto s = random_cc<Fp>(GF(2), m, n, 1, rng);
    CHECK_FALSE(is_zero_scalar(psi(s).plucker(multiindex_from_code(kalman_code(s)))));
  }
}

TEST_CASE("cell preimages hit every cell for m, n <= 3") {
  const Field f = GF(2);
  std::mt19937_64 rng(5);
  for (Index m = 1; m <= 3; ++m) {
    for (Index n = 1; n <= 3; ++n) {
      for (const auto& index : all_multi_indices(m + n - 1, n)) {
        const auto layout = cell_layout(index, m, n);
        const std::vector<Fp> zero(layout.free.size(), Fp(0, 2));
        const auto s = psi_cell_preimage<Fp>(f, index, m, n, zero, zeros<Fp>(f, 1, n), zeros<Fp>(f, n, 1));
        CHECK(classify(s).cc);
        CHECK(schubert_cell_of(psi(s)) == index);
        for (int t = 0; t < 10; ++t) {
          std::vector<Fp> values;
          for (std::size_t i = 0; i < layout.free.size(); ++i) values.push_back(draw_scalar<Fp>(f, rng));
          const auto r = psi_cell_preimage<Fp>(f, index, m, n, values, random_matrix<Fp>(f, 2, n, rng),
                                               random_matrix<Fp>(f, n, 1, rng));
          CHECK(schubert_cell_of(psi(r)) == index);
          CHECK(kalman_code(r) == code_from_multiindex(index, m, n));
          // the cell point is reproduced entry by entry
          CHECK(equal(psi(r).rep(), point_from_matrix(f, cell_matrix(r)).rep()));
        }
      }
    }
  }
}

TEST_CASE("cell preimage examples and errors") {
  const Field q = QQ();
  const auto s = psi_cell_preimage<Rational>(q, MultiIndex::from_one_based({1, 2}, 2), 1, 2, {},
                                             mat<Rational>(q, {{1, 0}}), mat<Rational>(q, {{4}, {5}}));
  CHECK(equal(s.A(), mat<Rational>(q, {{0, 4}, {1, 5}})));
  CHECK(equal(s.B(), mat<Rational>(q, {{1}, {0}})));
  try {
    psi_cell_preimage<Rational>(q, MultiIndex::from_one_based({1, 2}, 2), 1, 2, {Rational(1)}, mat<Rational>(q, {{1, 0}}),
                                mat<Rational>(q, {{4}, {5}}));
    FAIL("wrong number of free values accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
  }
  // m = 2, n = 4, code p = (3, 1): a last column AB₂ = e₃ is new before A²B₁
  const Field f = GF(2);
  const auto index = MultiIndex::from_one_based({1, 2, 3, 4}, 5);
  CHECK(code_from_multiindex(index, 2, 4) == KalmanCode(4, {3, 1}));
  const auto layout = cell_layout(index, 2, 4);
  const std::vector<Fp> zero(layout.free.size(), Fp(0, 2));
  try {
    psi_cell_preimage<Fp>(f, index, 2, 4, zero, zeros<Fp>(f, 1, 4), mat<Fp>(f, {{0}, {0}, {1}, {0}}));
    FAIL("code change not detected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CellNotReached);
  }
  CHECK_NOTHROW(psi_cell_preimage<Fp>(f, index, 2, 4, zero, zeros<Fp>(f, 1, 4), zeros<Fp>(f, 4, 1)));
}

TEST_CASE("gamma examples") {
  for (long long a : {-2, 0, 3}) {
    for (long long c : {-1, 0, 5}) {
      const auto g = gamma(sys1<Rational>(QQ(), a, 1, c));
      CHECK(g.stratum == 1);
      CHECK(g.point.k() == 2);
      CHECK(g.point.ambient() == 3);
      CHECK(g.point == point_from_matrix(QQ(), mat<Rational>(QQ(), {{-c, 1, 0}, {-a, 0, 1}})));
      CHECK_FALSE(is_zero_scalar(g.point.plucker(MultiIndex({1, 2}, 3))));
    }
  }
  const auto empty = gamma(LinearSystem<Rational>::zero(QQ(), 2, 0, 1));
  CHECK(empty.stratum == 0);
  CHECK(equal(empty.point.rep(), identity<Rational>(QQ(), 3)));
  CHECK(stratum_dimension(empty) == 0);
  const auto l = locus_membership(empty, 2, 1);
  CHECK(l.in_cc);
  CHECK(l.in_co);
  try {
    gamma(LinearSystem<Rational>::zero(QQ(), 1, 2, 1));
    FAIL("rank-deficient relation matrix accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankDeficient);
  }
}

TEST_CASE("locus membership examples") {
  // zero columns in the C block
  const auto pt = point_from_matrix(QQ(), mat<Rational>(QQ(), {{1, 0, 0, 0}, {0, 0, 0, 1}}));
  const InfiniteGrassmannPoint<Rational> x{pt, 1, 1, 2};
  CHECK_FALSE(locus_membership(x, 1, 1).in_cc);
  CHECK_THROWS_AS(locus_membership(x, 2, 1), Error);
  CHECK_THROWS_AS(stratum_dimension(x), Error);
}

TEST_CASE("locus rank test agrees with minor enumeration") {
  std::mt19937_64 rng(17);
  for (std::uint32_t q : {2u, 3u}) {
    const Field f = GF(q);
    for (int t = 0; t < 400; ++t) {
      const Index m = static_cast<Index>(rng() % 3);
      const Index p = static_cast<Index>(rng() % (5 - m));
      const Index n = static_cast<Index>(rng() % 4);
      if (m + p == 0) continue;
      Mat<Fp> rows = random_matrix<Fp>(f, m + p, m + p + n, rng);
      if (rank(rows) < m + p) continue;
      const InfiniteGrassmannPoint<Fp> x{point_from_matrix(f, rows), m, p, n};
      std::vector<Index> cc_cols, co_cols;
      for (Index i = m; i < m + p; ++i) cc_cols.push_back(i);
      for (Index i = 0; i < m; ++i) co_cols.push_back(i);
      if (n > 0) {
        cc_cols.push_back(m + p + n - 1);
        co_cols.push_back(m + p + n - 1);
      }
      const auto l = locus_membership(x, m, p);
      CHECK(l.in_cc == has_qualifying_minor(x.point, cc_cols));
      CHECK(l.in_co == has_qualifying_minor(x.point, co_cols));
      CHECK(l.in_canonical == (l.in_cc && l.in_co));
    }
  }
}

TEST_CASE("gamma of cc systems lies in the cc locus over F_2") {
  long misses = 0;
  for_each_small_f2_system([&](const LinearSystem<Fp>& s) {
    if (!is_controllable(s)) return;
    const auto g = gamma(s);
    const Index m = s.m(), p = s.p(), n = s.n();
    std::vector<Index> cols;
    for (Index i = m; i < m + p; ++i) cols.push_back(i);
    if (n > 0) cols.push_back(m + p + n - 1);
    if (rank(select_columns(g.point.rep(), cols)) != static_cast<Index>(cols.size())) ++misses;
    if (!locus_membership(g, m, p).in_cc) ++misses;
    if (stratum_dimension(g) != n) ++misses;
  });
  CHECK(misses == 0);
}

TEST_CASE("dual embedding of co systems lies in the co locus over F_2") {
  long misses = 0;
  for_each_small_f2_system([&](const LinearSystem<Fp>& s) {
    if (!is_observable(s)) return;
    const auto g = gamma_observable(s);
    if (!locus_membership(g, s.m(), s.p()).in_co) ++misses;
  });
  CHECK(misses == 0);
  CHECK_THROWS_AS(gamma_observable(sys1<Rational>(QQ(), 1, 1, 0)), Error);
}

TEST_CASE("gamma of a canonical system can miss the co locus") {
  // A e₁ = e₂, B = e₁, C = e₂ᵀ: every relation among [B Cᵀ A] has zero B-coefficient
  const Field f = GF(2);
  const LinearSystem<Fp> s(f, mat<Fp>(f, {{0, 0}, {1, 0}}), mat<Fp>(f, {{1}, {0}}), mat<Fp>(f, {{0, 1}}));
  CHECK(classify(s).canonical);
  const auto l = locus_membership(gamma(s), 1, 1);
  CHECK(l.in_cc);
  CHECK_FALSE(l.in_co);
  CHECK(locus_membership(gamma_observable(s), 1, 1).in_co);
}

TEST_CASE("stratum of a three-dimensional system") {
  std::mt19937_64 rng(31);
  const auto s = random_cc<Rational>(QQ(), 2, 3, 1, rng);
  CHECK(stratum_dimension(gamma(s)) == 3);
  // padding the representative does not change the stratum
  auto g = gamma(s);
  g.point = g.point.padded(10);
  CHECK(stratum_dimension(g) == 3);
}
