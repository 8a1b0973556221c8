#include "moduli/counting.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <thread>

#include "moduli/kalman.hpp"

namespace moduli {

namespace {

BigInt ipow(std::uint32_t q, long long e) {
  BigInt out = 1;
  for (long long i = 0; i < e; ++i) out *= q;
  return out;
}

std::uint32_t checked_prime(std::uint32_t q) {
  return Field::prime(q).characteristic();
}

// ∏_{i=1}^{n} (q^{shift+i−1} − 1)/(q^i − 1), evaluated exactly in ℚ.
BigInt grassmann_product(int shift, int n, std::uint32_t q) {
  BigRational acc = 1;
  for (int i = 1; i <= n; ++i) {
    acc *= BigRational(ipow(q, shift + i - 1) - 1, ipow(q, i) - 1);
  }
  if (denominator(acc) != 1) throw Error(ErrorCode::InconsistentData, "point count is not an integer");
  return numerator(acc);
}

// Odometer over base-q digit vectors of the given length, split across
// threads by leading index range; `test(digits)` reports a hit.
std::uint64_t count_hits(std::uint32_t q, std::size_t length, std::uint64_t bound, unsigned threads,
                         const std::function<bool(const std::vector<std::uint32_t>&)>& test) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < length; ++i) {
    total *= q;
    if (total > bound) throw Error(ErrorCode::CensusTooLarge, "census state space exceeds the enumeration bound");
  }
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));

  std::vector<std::uint64_t> tallies(workers, 0);
  auto run = [&](unsigned w) {
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    std::vector<std::uint32_t> digits(length);
    std::uint64_t s = begin;
    for (std::size_t i = 0; i < length; ++i, s /= q) digits[i] = static_cast<std::uint32_t>(s % q);
    std::uint64_t hits = 0;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      if (test(digits)) ++hits;
      for (std::size_t i = 0; i < length && ++digits[i] == q; ++i) digits[i] = 0;
    }
    tallies[w] = hits;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  std::uint64_t hits = 0;
  for (auto t : tallies) hits += t;
  return hits;
}

Mat<Fp> fill(const Field& f, Index rows, Index cols, const std::vector<std::uint32_t>& digits, std::size_t& at) {
  Mat<Fp> out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out(i, j) = Fp(digits[at++], f.characteristic());
  }
  return out;
}

std::string key_of(const LinearSystem<Fp>& sys) {
  std::string key;
  for (const Mat<Fp>* mat : {&sys.A(), &sys.B(), &sys.C()}) {
    for (Index i = 0; i < mat->size(); ++i) {
      key += std::to_string((*mat)(i).value());
      key += ',';
    }
    key += ';';
  }
  return key;
}

// Distinct canonical forms among cc systems obtained by `make` from every
// digit vector of the given length.
std::pair<std::uint64_t, std::uint64_t> canonical_form_census(
    std::uint32_t q, std::size_t length, std::uint64_t bound,
    const std::function<LinearSystem<Fp>(const std::vector<std::uint32_t>&)>& make) {
  std::set<std::string> forms;
  std::uint64_t raw = 0;
  count_hits(q, length, bound, 1, [&](const std::vector<std::uint32_t>& digits) {
    const auto sys = make(digits);
    if (!is_controllable(sys)) return false;
    ++raw;
    forms.insert(key_of(canonical_form(sys).system));
    return true;
  });
  return {raw, forms.size()};
}

CensusReport finish(CensusReport report, const BigInt& raw, const BigInt& orbits) {
  report.raw_cc_triples = raw;
  report.orbit_count = orbits;
  if (orbits * report.gl_order != raw) {
    throw Error(ErrorCode::NonTrivialStabilizer, "raw count is not |GL_n| times the orbit count");
  }
  report.match = report.orbit_count == report.formula_value;
  return report;
}

}  // namespace

BigInt gl_order(int n, std::uint32_t q) {
  BigInt out = 1;
  const BigInt qn = ipow(q, n);
  for (int i = 0; i < n; ++i) out *= qn - ipow(q, i);
  return out;
}

BigInt q_binomial(int a, int b, std::uint32_t q) {
  if (b < 0 || b > a) throw Error(ErrorCode::IndexOutOfRange, "q-binomial needs 0 <= b <= a");
  return grassmann_product(a - b + 1, b, q);
}

BigInt count_cc_formula(int m, int n, int p, std::uint32_t q) {
  return ipow(q, static_cast<long long>(n) * (p + 1)) * grassmann_product(m, n, q);
}

BigInt count_co_formula(int m, int n, int p, std::uint32_t q) {
  return ipow(q, static_cast<long long>(n) * (m + 1)) * grassmann_product(p, n, q);
}

CensusReport census_cc(int m, int n, int p, std::uint32_t q, const CensusOptions& options) {
  const Field f = Field::prime(checked_prime(q));
  CensusReport report{m, n, p, q, 0, gl_order(n, q), 0, count_cc_formula(m, n, p, q), false};
  const auto len_ab = static_cast<std::size_t>(n * n + n * m);

  if (options.mode == CensusMode::CanonicalForms) {
    const auto [raw, orbits] = canonical_form_census(
        q, len_ab + static_cast<std::size_t>(p * n), options.bound, [&](const std::vector<std::uint32_t>& d) {
          std::size_t at = 0;
          Mat<Fp> a = fill(f, n, n, d, at);
          Mat<Fp> b = fill(f, n, m, d, at);
          Mat<Fp> c = fill(f, p, n, d, at);
          return LinearSystem<Fp>(f, std::move(a), std::move(b), std::move(c));
        });
    return finish(report, BigInt(raw), BigInt(orbits));
  }

  const Mat<Fp> c0 = zeros<Fp>(f, 0, n);
  const std::uint64_t pairs = count_hits(q, len_ab, options.bound, options.threads, [&](const auto& d) {
    std::size_t at = 0;
    Mat<Fp> a = fill(f, n, n, d, at);
    Mat<Fp> b = fill(f, n, m, d, at);
    return is_controllable(LinearSystem<Fp>(f, std::move(a), std::move(b), c0));
  });
  // C is unconstrained
  const BigInt raw = BigInt(pairs) * ipow(q, static_cast<long long>(p) * n);
  return finish(report, raw, raw / report.gl_order);
}

CensusReport census_co(int m, int n, int p, std::uint32_t q, const CensusOptions& options) {
  const Field f = Field::prime(checked_prime(q));
  CensusReport report{m, n, p, q, 0, gl_order(n, q), 0, count_co_formula(m, n, p, q), false};
  const auto len_ac = static_cast<std::size_t>(n * n + p * n);

  if (options.mode == CensusMode::CanonicalForms) {
    const auto [raw, orbits] = canonical_form_census(
        q, len_ac + static_cast<std::size_t>(n * m), options.bound, [&](const std::vector<std::uint32_t>& d) {
          std::size_t at = 0;
          Mat<Fp> a = fill(f, n, n, d, at);
          Mat<Fp> c = fill(f, p, n, d, at);
          Mat<Fp> b = fill(f, n, m, d, at);
          return dualize(LinearSystem<Fp>(f, std::move(a), std::move(b), std::move(c)));
        });
    return finish(report, BigInt(raw), BigInt(orbits));
  }

  const Mat<Fp> b0 = zeros<Fp>(f, n, 0);
  const std::uint64_t pairs = count_hits(q, len_ac, options.bound, options.threads, [&](const auto& d) {
    std::size_t at = 0;
    Mat<Fp> a = fill(f, n, n, d, at);
    Mat<Fp> c = fill(f, p, n, d, at);
    return is_controllable(dualize(LinearSystem<Fp>(f, std::move(a), b0, std::move(c))));
  });
  // B is unconstrained
  const BigInt raw = BigInt(pairs) * ipow(q, static_cast<long long>(m) * n);
  return finish(report, raw, raw / report.gl_order);
}

void write_census_header(std::ostream& os) { os << "m,n,p,q,raw,gl_order,orbits,formula,match\n"; }

void write_census_row(std::ostream& os, const CensusReport& r) {
  os << r.m << ',' << r.n << ',' << r.p << ',' << r.q << ',' << r.raw_cc_triples << ',' << r.gl_order << ','
     << r.orbit_count << ',' << r.formula_value << ',' << (r.match ? "true" : "false") << '\n';
}

std::vector<BigInt> product_series(int m, int p, std::uint32_t q, int degree) {
  std::vector<BigInt> series(static_cast<std::size_t>(degree + 1), 0);
  series[0] = 1;
  for (int i = 1; i <= m; ++i) {
    // multiply by 1/(1 − x t) = Σ xᵏ tᵏ, i.e. s_d ← s_d + x·s_{d−1} (ascending d)
    const BigInt x = ipow(q, p + i);
    for (int d = 1; d <= degree; ++d) series[static_cast<std::size_t>(d)] += x * series[static_cast<std::size_t>(d - 1)];
  }
  return series;
}

bool series_identity_check(int m, int p, std::uint32_t q, int degree) {
  const auto rhs = product_series(m, p, q, degree);
  for (int n = 0; n <= degree; ++n) {
    if (count_cc_formula(m, n, p, q) != rhs[static_cast<std::size_t>(n)]) return false;
  }
  return true;
}

}  // namespace moduli
