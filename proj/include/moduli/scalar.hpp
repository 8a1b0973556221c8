#pragma once

// Exact scalar types usable as Eigen matrix coefficients.
//
// Two fields are supported: the rationals (arbitrary precision, GMP backed)
// and prime fields F_q. An `Fp` carries its modulus; a value constructed from
// a bare integer is an unbound literal that adopts the modulus of whatever it
// is combined with. Eigen relies on that when it builds Scalar(0)/Scalar(1).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "moduli/error.hpp"

namespace moduli {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

bool is_prime(std::uint64_t q);

class Fp {
 public:
  Fp() = default;
  // Unbound integer literal.
  Fp(long long literal) : v_(literal) {}  // NOLINT(google-explicit-constructor)
  Fp(long long value, std::uint32_t q);

  std::uint32_t modulus() const { return q_; }
  bool bound() const { return q_ != 0; }
  // Canonical representative in [0, q) once bound; the raw literal otherwise.
  long long value() const { return v_; }

  // Throws InvalidField if already bound to a different modulus.
  Fp bind(std::uint32_t q) const;
  Fp inverse() const;

  friend Fp operator+(const Fp& a, const Fp& b);
  friend Fp operator-(const Fp& a, const Fp& b);
  friend Fp operator*(const Fp& a, const Fp& b);
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const;

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b);
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x);

 private:
  static std::uint32_t common_modulus(const Fp& a, const Fp& b);

  long long v_ = 0;
  std::uint32_t q_ = 0;
};

// Runtime description of the coefficient field.
class Field {
 public:
  enum class Kind { Rationals, PrimeField };

  static Field rationals() { return Field(Kind::Rationals, 0); }
  // Throws InvalidField unless q is prime.
  static Field prime(std::uint64_t q);

  Kind kind() const { return kind_; }
  std::uint32_t characteristic() const { return q_; }
  bool is_prime_field() const { return kind_ == Kind::PrimeField; }
  // Number of elements; 0 stands for infinite.
  std::uint32_t order() const { return q_; }

  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(Kind k, std::uint32_t q) : kind_(k), q_(q) {}
  Kind kind_;
  std::uint32_t q_;
};

// Per-scalar glue used by the generic algorithms.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Field::Kind kind = Field::Kind::Rationals;
  static Rational from_int(const Field&, long long v) { return Rational(v); }
  static Rational bind(const Field&, const Rational& x) { return x; }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational parse(const Field& f, std::string_view text);
  static std::string to_string(const Rational& x) { return x.str(); }
};

template <>
struct ScalarTraits<Fp> {
  static constexpr Field::Kind kind = Field::Kind::PrimeField;
  static Fp from_int(const Field& f, long long v) { return Fp(v, f.characteristic()); }
  static Fp bind(const Field& f, const Fp& x) { return x.bind(f.characteristic()); }
  static bool is_zero(const Fp& x) { return x == Fp(0); }
  static Fp parse(const Field& f, std::string_view text);
  static std::string to_string(const Fp& x) { return std::to_string(x.value()); }
};

// Throws InvalidField when the runtime field does not match the scalar type.
template <class S>
void require_field(const Field& f) {
  if (f.kind() != ScalarTraits<S>::kind) {
    throw Error(ErrorCode::InvalidField, "field " + f.name() + " does not match scalar type");
  }
}

}  // namespace moduli

namespace Eigen {

template <>
struct NumTraits<moduli::Fp> : GenericNumTraits<moduli::Fp> {
  using Real = moduli::Fp;
  using NonInteger = moduli::Fp;
  using Nested = moduli::Fp;
  using Literal = moduli::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
