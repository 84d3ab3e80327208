#include "resect/poly/multipoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "resect/error.hpp"

namespace resect::poly {

MultiPoly MultiPoly::constant(Ring ring, const Scalar& c) {
  MultiPoly p(ring, c.field());
  p.add_term(Monomial(), c);
  return p;
}

MultiPoly MultiPoly::variable(Ring ring, Field field, Var v) {
  if (v >= ring.size()) fail(ErrorCode::InvalidArgument, "variable outside ring");
  MultiPoly p(ring, field);
  p.add_term(Monomial::of(v), Scalar(field, 1));
  return p;
}

MultiPoly MultiPoly::monomial(Ring ring, const Monomial& m, const Scalar& c) {
  MultiPoly p(ring, c.field());
  p.add_term(m, c);
  return p;
}

Scalar MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(field_) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const Scalar& c) {
  if (!(c.field() == field_)) fail(ErrorCode::FieldMismatch, "term field differs from polynomial");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (!(ring_ == o.ring_)) fail(ErrorCode::DimensionMismatch, "polynomials live in different rings");
  if (!(field_ == o.field_)) fail(ErrorCode::FieldMismatch, "polynomials over different fields");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly r(a.ring_, a.field_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MultiPoly MultiPoly::operator-() const { return scaled(Scalar(field_, -1)); }

MultiPoly MultiPoly::scaled(const Scalar& c) const {
  MultiPoly r(ring_, field_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, x * c);
  return r;
}

MultiPoly MultiPoly::times(const Monomial& mono, const Scalar& c) const {
  MultiPoly r(ring_, field_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace(m * mono, x * c);
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return ring_ == o.ring_ && field_ == o.field_ && terms_ == o.terms_;
}

Scalar MultiPoly::evaluate(const std::vector<Scalar>& values) const {
  if (values.size() != ring_.size()) fail(ErrorCode::DimensionMismatch, "evaluation point has wrong size");
  Scalar acc(field_);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (const auto& [v, e] : m.entries())
      for (std::uint32_t k = 0; k < e; ++k) t *= values[v];
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(Var v) const {
  MultiPoly r(ring_, field_);
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m.exponent(v);
    if (e == 0) continue;
    r.add_term(Monomial::of(v).quotient_of(m), c * Scalar(field_, static_cast<long long>(e)));
  }
  return r;
}

MultiPoly MultiPoly::substitute(Var v, const Scalar& value) const {
  MultiPoly r(ring_, field_);
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m.exponent(v);
    Scalar t = c;
    for (std::uint32_t k = 0; k < e; ++k) t *= value;
    r.add_term(e ? Monomial::of(v, e).quotient_of(m) : m, t);
  }
  return r;
}

MultiPoly MultiPoly::remap(const Ring& target, const std::vector<Var>& map) const {
  MultiPoly r(target, field_);
  for (const auto& [m, c] : terms_) {
    std::vector<Monomial::Entry> e;
    for (const auto& [v, x] : m.entries()) {
      if (v >= map.size() || map[v] >= target.size()) fail(ErrorCode::InvalidArgument, "variable map out of range");
      e.emplace_back(map[v], x);
    }
    r.add_term(Monomial(std::move(e)), c);
  }
  return r;
}

MultiPoly MultiPoly::to_field(Field f) const {
  MultiPoly r(ring_, f);
  for (const auto& [m, c] : terms_) {
    if (field_.is_prime()) {
      if (!(f == field_)) fail(ErrorCode::FieldMismatch, "cannot lift prime field coefficients");
      r.add_term(m, c);
    } else {
      r.add_term(m, Scalar(f, c.rational()));
    }
  }
  return r;
}

std::uint32_t MultiPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const std::uint32_t d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return false;
  return true;
}

std::vector<Var> MultiPoly::variables() const {
  std::set<Var> s;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.entries()) s.insert(v);
  return {s.begin(), s.end()};
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    os << (first ? "" : " + ") << "(" << it->second.to_string() << ")";
    if (!it->first.is_one()) os << "*" << it->first.to_string(ring_);
    first = false;
  }
  return os.str();
}

Monomial leading_monomial(const MultiPoly& f, const MonomialOrder& ord) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "leading monomial of zero polynomial");
  auto it = f.terms().begin();
  const Monomial* best = &it->first;
  for (++it; it != f.terms().end(); ++it)
    if (ord.compare(it->first, *best) > 0) best = &it->first;
  return *best;
}

Scalar leading_coefficient(const MultiPoly& f, const MonomialOrder& ord) {
  return f.coefficient(leading_monomial(f, ord));
}

MultiPoly monic(const MultiPoly& f, const MonomialOrder& ord) {
  return f.scaled(leading_coefficient(f, ord).inverse());
}

std::vector<std::uint32_t> multidegree(const MultiPoly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "multidegree of zero polynomial");
  const Ring& ring = f.ring();
  const std::size_t blocks = static_cast<std::size_t>(ring.cameras()) * ring.points();
  std::vector<std::uint32_t> ref;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::uint32_t> d(blocks, 0);
    for (const auto& [v, e] : m.entries())
      if (!ring.is_aux(v)) d[ring.block(v)] += e;
    if (first) {
      ref = std::move(d);
      first = false;
    } else if (d != ref) {
      fail(ErrorCode::NotMultihomogeneous, "polynomial is not multihomogeneous");
    }
  }
  return ref;
}

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g, const MonomialOrder& ord) {
  const Monomial lf = leading_monomial(f, ord);
  const Monomial lg = leading_monomial(g, ord);
  const Monomial l = lf.lcm(lg);
  const Scalar cf = f.coefficient(lf), cg = g.coefficient(lg);
  return f.times(lf.quotient_of(l), cf.inverse()) - g.times(lg.quotient_of(l), cg.inverse());
}

Division divide(const MultiPoly& f, const MultiPoly& g, const MonomialOrder& ord) {
  const Monomial lg = leading_monomial(g, ord);
  const Scalar inv = g.coefficient(lg).inverse();
  Division d{MultiPoly(f.ring(), f.field()), MultiPoly(f.ring(), f.field())};
  MultiPoly rest = f;
  while (!rest.is_zero()) {
    const Monomial lm = leading_monomial(rest, ord);
    const Scalar c = rest.coefficient(lm);
    if (lg.divides(lm)) {
      const Monomial q = lg.quotient_of(lm);
      d.quotient.add_term(q, c * inv);
      rest -= g.times(q, c * inv);
    } else {
      d.remainder.add_term(lm, c);
      rest.add_term(lm, -c);
    }
  }
  return d;
}

}  // namespace resect::poly
