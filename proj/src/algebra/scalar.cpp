#include "resect/algebra/scalar.hpp"

#include <charconv>
#include <string>

#include "resect/error.hpp"

namespace resect {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::DivisionByZero: return "division_by_zero";
    case ErrorCode::FieldMismatch: return "field_mismatch";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::NotSquare: return "not_square";
    case ErrorCode::SingularPivot: return "singular_pivot";
    case ErrorCode::ZeroPolynomial: return "zero_polynomial";
    case ErrorCode::NotMultihomogeneous: return "not_multihomogeneous";
    case ErrorCode::Genericity: return "genericity";
    case ErrorCode::CenterCoincidence: return "center_coincidence";
    case ErrorCode::ChartViolation: return "chart_violation";
    case ErrorCode::InconsistentData: return "inconsistent_data";
    case ErrorCode::DegenerateArrangement: return "degenerate_arrangement";
    case ErrorCode::RankDeficient: return "rank_deficient";
    case ErrorCode::Schema: return "schema";
    case ErrorCode::Io: return "io";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace resect

namespace resect::algebra {

namespace {

bool is_prime_number(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint32_t reduce_mpz(const mpz_class& z, std::uint32_t p) {
  return static_cast<std::uint32_t>(mpz_fdiv_ui(z.get_mpz_t(), p));
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime_number(p)) {
    fail(ErrorCode::InvalidArgument, "field characteristic must be a prime below 2^31");
  }
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "QQ" || text == "qq") return rationals();
  if (text.size() > 3 && (text.substr(0, 3) == "Fp:" || text.substr(0, 3) == "fp:")) {
    std::uint32_t p = 0;
    auto digits = text.substr(3);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      fail(ErrorCode::InvalidArgument, "bad field descriptor: " + std::string(text));
    }
    return prime(p);
  }
  fail(ErrorCode::InvalidArgument, "bad field descriptor: " + std::string(text));
}

std::string Field::to_string() const {
  return is_prime() ? "Fp:" + std::to_string(p_) : "QQ";
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in prime field");
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Scalar::Scalar(Field f) : field_(f) {
  if (f.is_prime()) {
    v_ = std::uint32_t{0};
  } else {
    v_ = mpq_class(0);
  }
}

Scalar::Scalar(Field f, long long v) : field_(f) {
  if (f.is_prime()) {
    long long r = v % static_cast<long long>(f.characteristic());
    if (r < 0) r += f.characteristic();
    v_ = static_cast<std::uint32_t>(r);
  } else {
    v_ = mpq_class(static_cast<long>(v));
  }
}

Scalar::Scalar(Field f, const mpq_class& v) : field_(f) {
  if (f.is_prime()) {
    const std::uint32_t p = f.characteristic();
    std::uint32_t num = reduce_mpz(v.get_num(), p);
    std::uint32_t den = reduce_mpz(v.get_den(), p);
    if (den == 0) fail(ErrorCode::DivisionByZero, "denominator vanishes modulo p");
    v_ = static_cast<std::uint32_t>(std::uint64_t{num} * inverse_mod(den, p) % p);
  } else {
    mpq_class c = v;
    c.canonicalize();
    v_ = std::move(c);
  }
}

Scalar Scalar::parse(Field f, std::string_view text) {
  std::string s(text);
  if (s.empty()) fail(ErrorCode::Schema, "empty scalar string");
  mpq_class q;
  if (q.set_str(s, 10) != 0) fail(ErrorCode::Schema, "bad scalar string: " + s);
  if (q.get_den() == 0) fail(ErrorCode::DivisionByZero, "zero denominator: " + s);
  q.canonicalize();
  return Scalar(f, q);
}

bool Scalar::is_zero() const {
  if (field_.is_prime()) return residue() == 0;
  return sgn(rational()) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_prime()) return residue() == 1;
  return rational() == 1;
}

double Scalar::to_double() const {
  if (field_.is_prime()) return static_cast<double>(residue());
  return rational().get_d();
}

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(residue());
  return rational().get_str(10);
}

void Scalar::check_same(const Scalar& o) const {
  if (!(field_ == o.field_)) {
    fail(ErrorCode::FieldMismatch,
         "field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
  Scalar r(field_);
  if (field_.is_prime()) {
    r.v_ = inverse_mod(residue(), field_.characteristic());
  } else {
    r.v_ = mpq_class(1) / rational();
  }
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r(field_);
  if (field_.is_prime()) {
    std::uint32_t v = residue();
    r.v_ = v == 0 ? 0u : field_.characteristic() - v;
  } else {
    r.v_ = mpq_class(-rational());
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (field_.is_prime()) {
    std::uint64_t s = std::uint64_t{residue()} + o.residue();
    v_ = static_cast<std::uint32_t>(s % field_.characteristic());
  } else {
    std::get<mpq_class>(v_) += o.rational();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    std::uint64_t s = std::uint64_t{residue()} + p - o.residue();
    v_ = static_cast<std::uint32_t>(s % p);
  } else {
    std::get<mpq_class>(v_) -= o.rational();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (field_.is_prime()) {
    v_ = static_cast<std::uint32_t>(std::uint64_t{residue()} * o.residue() %
                                    field_.characteristic());
  } else {
    std::get<mpq_class>(v_) *= o.rational();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  if (field_.is_prime()) return residue() == o.residue();
  return rational() == o.rational();
}

}  // namespace resect::algebra
