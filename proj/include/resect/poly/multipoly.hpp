#pragma once

#include <map>
#include <vector>

#include "resect/algebra/scalar.hpp"
#include "resect/poly/order.hpp"
#include "resect/poly/ring.hpp"

namespace resect::poly {

using algebra::Field;
using algebra::Scalar;

class MultiPoly {
 public:
  using Terms = std::map<Monomial, Scalar>;

  MultiPoly() = default;
  MultiPoly(Ring ring, Field field) : ring_(ring), field_(field) {}

  static MultiPoly constant(Ring ring, const Scalar& c);
  static MultiPoly variable(Ring ring, Field field, Var v);
  static MultiPoly monomial(Ring ring, const Monomial& m, const Scalar& c);

  const Ring& ring() const { return ring_; }
  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Scalar& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  MultiPoly scaled(const Scalar& c) const;
  MultiPoly times(const Monomial& m, const Scalar& c) const;
  bool operator==(const MultiPoly& o) const;

  // values[v] is the value of variable v; size must be ring().size().
  Scalar evaluate(const std::vector<Scalar>& values) const;
  MultiPoly derivative(Var v) const;
  // Replaces variable v by a constant.
  MultiPoly substitute(Var v, const Scalar& value) const;
  // Same terms viewed in another ring; variable indices are mapped by `map`.
  MultiPoly remap(const Ring& target, const std::vector<Var>& map) const;
  MultiPoly to_field(Field f) const;

  std::uint32_t total_degree() const;
  bool is_homogeneous() const;
  std::vector<Var> variables() const;
  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& o) const;

  Ring ring_;
  Field field_;
  Terms terms_;
};

/// Throws ZeroPolynomial on f = 0.
Monomial leading_monomial(const MultiPoly& f, const MonomialOrder& ord);
Scalar leading_coefficient(const MultiPoly& f, const MonomialOrder& ord);
/// f divided by its leading coefficient.
MultiPoly monic(const MultiPoly& f, const MonomialOrder& ord);

/// Degree of f in each (camera, point) block of image variables, indexed by
/// (i-1) n + (j-1). Throws NotMultihomogeneous or ZeroPolynomial.
std::vector<std::uint32_t> multidegree(const MultiPoly& f);

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g, const MonomialOrder& ord);
/// Normal form of f modulo G (full reduction).
MultiPoly reduce(const MultiPoly& f, const std::vector<MultiPoly>& G, const MonomialOrder& ord);

struct Division {
  MultiPoly quotient;
  MultiPoly remainder;
};
Division divide(const MultiPoly& f, const MultiPoly& g, const MonomialOrder& ord);

}  // namespace resect::poly
