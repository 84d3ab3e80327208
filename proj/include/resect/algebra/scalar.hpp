#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace resect::algebra {

inline constexpr std::uint32_t kDefaultPrime = 32003;

// Either the rationals or Z/p for a prime p < 2^31.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }
  static Field prime(std::uint32_t p = kDefaultPrime);
  // Accepts "QQ", "qq", "Fp:P", "fp:P".
  static Field parse(std::string_view text);

  bool is_prime() const { return p_ != 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string to_string() const;

  bool operator==(const Field&) const = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

class Scalar {
 public:
  Scalar() : Scalar(Field::rationals()) {}
  explicit Scalar(Field f);
  Scalar(Field f, long long v);
  Scalar(Field f, const mpq_class& v);

  static Scalar parse(Field f, std::string_view text);

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  std::uint32_t residue() const { return std::get<std::uint32_t>(v_); }

  // Lossy conversion; prime-field residues map to their representative.
  double to_double() const;
  std::string to_string() const;

  Scalar inverse() const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

 private:
  void check_same(const Scalar& o) const;

  Field field_;
  std::variant<std::uint32_t, mpq_class> v_;
};

}  // namespace resect::algebra
