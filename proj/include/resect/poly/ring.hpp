#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace resect::poly {

using Var = std::uint32_t;

// p_{ij}[c] with 1-based camera i, point j and coordinate c.
struct ImageVar {
  std::uint32_t camera = 1;
  std::uint32_t point = 1;
  std::uint32_t coord = 1;

  bool operator==(const ImageVar&) const = default;
};

// Variables p_{ij}[c] of m cameras and n points, followed by `aux` auxiliary
// variables. Index of p_{ij}[c] is ((i-1) n + (j-1)) * 3 + (c-1), so the
// natural index order is p_{11}[1], p_{11}[2], p_{11}[3], p_{12}[1], ...
class Ring {
 public:
  Ring() = default;
  Ring(std::uint32_t m, std::uint32_t n, std::uint32_t aux = 0) : m_(m), n_(n), aux_(aux) {}

  std::uint32_t cameras() const { return m_; }
  std::uint32_t points() const { return n_; }
  std::uint32_t aux() const { return aux_; }
  std::uint32_t image_vars() const { return 3 * m_ * n_; }
  std::uint32_t size() const { return image_vars() + aux_; }

  Var var(ImageVar v) const;
  Var var(std::uint32_t camera, std::uint32_t point, std::uint32_t coord) const {
    return var(ImageVar{camera, point, coord});
  }
  Var aux_var(std::uint32_t k) const;
  bool is_aux(Var v) const { return v >= image_vars(); }
  ImageVar image_var(Var v) const;
  // Index of the (camera, point) block of an image variable: (i-1) n + (j-1).
  std::uint32_t block(Var v) const { return v / 3; }
  std::string name(Var v) const;

  Ring with_aux(std::uint32_t aux) const { return Ring(m_, n_, aux); }

  bool operator==(const Ring&) const = default;

 private:
  std::uint32_t m_ = 0;
  std::uint32_t n_ = 0;
  std::uint32_t aux_ = 0;
};

// Sparse exponent vector; entries sorted by variable, all exponents positive.
class Monomial {
 public:
  using Entry = std::pair<Var, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(std::vector<Entry> entries);
  static Monomial of(Var v, std::uint32_t e = 1);

  const std::vector<Entry>& entries() const { return e_; }
  std::uint32_t exponent(Var v) const;
  std::uint32_t degree() const;
  bool is_one() const { return e_.empty(); }
  bool is_squarefree() const;

  bool divides(const Monomial& o) const;
  // Requires divides(o); returns o / *this.
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial&) const = default;
  // Storage order used by containers; not a monomial order.
  bool operator<(const Monomial& o) const { return e_ < o.e_; }

  std::string to_string(const Ring& ring) const;

 private:
  std::vector<Entry> e_;
};

}  // namespace resect::poly
