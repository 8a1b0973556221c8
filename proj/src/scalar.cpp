#include "moduli/scalar.hpp"

#include <ostream>

namespace moduli {

namespace {

long long reduce(long long v, std::uint32_t q) {
  long long r = v % static_cast<long long>(q);
  return r < 0 ? r + q : r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view text) {
  std::string_view t = trim(text);
  std::string_view digits = t;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw Error(ErrorCode::ParseError, "empty integer in '" + std::string(text) + "'");
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(text) + "'");
    }
  }
  if (t.front() == '+') t.remove_prefix(1);
  return BigInt(std::string(t));
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonSquareSelection: return "NonSquareSelection";
    case ErrorCode::InvalidMultiIndex: return "InvalidMultiIndex";
    case ErrorCode::NonzeroThetaAlpha: return "NonzeroThetaAlpha";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SingularBaseChange: return "SingularBaseChange";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotControllable: return "NotControllable";
    case ErrorCode::NotInLocus: return "NotInLocus";
    case ErrorCode::CellNotReached: return "CellNotReached";
    case ErrorCode::OracleTooLarge: return "OracleTooLarge";
    case ErrorCode::CensusTooLarge: return "CensusTooLarge";
    case ErrorCode::NonTrivialStabilizer: return "NonTrivialStabilizer";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::InconsistentData: return "InconsistentData";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidField:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::NonSquareSelection:
    case ErrorCode::InvalidMultiIndex:
    case ErrorCode::NonzeroThetaAlpha:
      return true;
    default:
      return false;
  }
}

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fp

Fp::Fp(long long value, std::uint32_t q) : v_(q == 0 ? value : reduce(value, q)), q_(q) {}

Fp Fp::bind(std::uint32_t q) const {
  if (q_ == q) return *this;
  if (q_ != 0) {
    throw Error(ErrorCode::InvalidField, "element of F_" + std::to_string(q_) + " used in F_" + std::to_string(q));
  }
  return Fp(v_, q);
}

std::uint32_t Fp::common_modulus(const Fp& a, const Fp& b) {
  if (a.q_ == b.q_ || b.q_ == 0) return a.q_;
  if (a.q_ == 0) return b.q_;
  throw Error(ErrorCode::InvalidField, "mixing F_" + std::to_string(a.q_) + " and F_" +
                                           std::to_string(b.q_));
}

Fp operator+(const Fp& a, const Fp& b) {
  const std::uint32_t q = Fp::common_modulus(a, b);
  if (q == 0) return Fp(a.v_ + b.v_);
  return Fp(reduce(a.v_, q) + reduce(b.v_, q), q);
}

Fp operator-(const Fp& a, const Fp& b) {
  const std::uint32_t q = Fp::common_modulus(a, b);
  if (q == 0) return Fp(a.v_ - b.v_);
  return Fp(reduce(a.v_, q) - reduce(b.v_, q), q);
}

Fp operator*(const Fp& a, const Fp& b) {
  const std::uint32_t q = Fp::common_modulus(a, b);
  if (q == 0) return Fp(a.v_ * b.v_);
  return Fp(reduce(a.v_, q) * reduce(b.v_, q), q);
}

Fp Fp::operator-() const { return q_ == 0 ? Fp(-v_) : Fp(-v_, q_); }

Fp Fp::inverse() const {
  if (q_ == 0) {
    if (v_ == 1 || v_ == -1) return *this;
    throw Error(ErrorCode::InvalidField, "inverse of an unbound F_q literal");
  }
  if (v_ == 0) throw Error(ErrorCode::SingularMatrix, "division by zero in F_" + std::to_string(q_));
  // extended Euclid
  long long r0 = q_, r1 = v_, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const long long quot = r0 / r1;
    long long tmp = r0 - quot * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - quot * t1;
    t0 = t1;
    t1 = tmp;
  }
  return Fp(t0, q_);
}

bool operator==(const Fp& a, const Fp& b) {
  const std::uint32_t q = Fp::common_modulus(a, b);
  if (q == 0) return a.v_ == b.v_;
  return reduce(a.v_, q) == reduce(b.v_, q);
}

std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

// ---------------------------------------------------------------------------
// Field

Field Field::prime(std::uint64_t q) {
  if (!is_prime(q) || q > 0x7FFFFFFFu) {
    throw Error(ErrorCode::InvalidField, "F_q needs a prime q below 2^31, got " + std::to_string(q));
  }
  return Field(Kind::PrimeField, static_cast<std::uint32_t>(q));
}

std::string Field::name() const {
  return kind_ == Kind::Rationals ? std::string("Q") : "F_" + std::to_string(q_);
}

Rational ScalarTraits<Rational>::parse(const Field&, std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  BigInt den = parse_integer(text.substr(slash + 1));
  if (den.is_zero()) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Fp ScalarTraits<Fp>::parse(const Field& f, std::string_view text) {
  BigInt v = parse_integer(text);
  BigInt r = v % f.characteristic();
  if (r < 0) r += f.characteristic();
  return Fp(r.convert_to<long long>(), f.characteristic());
}

}  // namespace moduli
