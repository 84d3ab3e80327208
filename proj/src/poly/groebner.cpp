#include "resect/poly/groebner.hpp"

#include <algorithm>
#include <functional>
#include <variant>

#include "engine.hpp"
#include "resect/error.hpp"
#include "resect/random.hpp"

namespace resect::poly {

namespace {

using detail::Engine;
using detail::FpK;
using detail::QK;

template <class Fn>
auto with_engine(const MonomialOrder& ord, const Ring& ring, Field field, Fn&& fn) {
  if (field.is_prime()) {
    Engine<FpK> e(FpK{field.characteristic()}, ord, ring, field);
    return fn(e);
  }
  Engine<QK> e(QK{}, ord, ring, field);
  return fn(e);
}

void check_same_ring(const std::vector<MultiPoly>& polys, const Ring& ring, Field field) {
  for (const auto& p : polys) {
    if (!(p.ring() == ring)) fail(ErrorCode::DimensionMismatch, "polynomials live in different rings");
    if (!(p.field() == field)) fail(ErrorCode::FieldMismatch, "polynomials over different fields");
  }
}

const MultiPoly* first_nonzero(const std::vector<MultiPoly>& polys) {
  for (const auto& p : polys)
    if (!p.is_zero()) return &p;
  return polys.empty() ? nullptr : &polys.front();
}

}  // namespace

GbResult buchberger(const std::vector<MultiPoly>& gens, const MonomialOrder& ord,
                    const Budget& budget) {
  GbResult result;
  const MultiPoly* ref = first_nonzero(gens);
  if (!ref) return result;
  const Ring ring = ref->ring();
  const Field field = ref->field();
  check_same_ring(gens, ring, field);
  with_engine(ord, ring, field, [&](auto& e) {
    using P = typename std::remove_reference_t<decltype(e)>::P;
    std::vector<P> in;
    for (const auto& g : gens) in.push_back(e.from_multipoly(g));
    auto out = e.groebner(std::move(in), budget);
    // The map-based representation costs several times the engine's.
    std::size_t terms = 0;
    for (const auto& p : out.basis) terms += p.size();
    const std::size_t per_term = sizeof(MultiPoly::Terms::value_type) + 48 + 8 * ring.size();
    if (out.exceeded.empty() && detail::resident_bytes() + terms * per_term > budget.max_memory)
      out.exceeded = "max_memory";
    if (out.exceeded.empty())
      for (const auto& p : out.basis) result.basis.push_back(e.to_multipoly(p));
    result.stats = out.stats;
    result.exceeded = out.exceeded;
    result.status = out.exceeded.empty() ? GbStatus::Complete : GbStatus::BudgetExceeded;
    return 0;
  });
  return result;
}

std::optional<std::uint64_t> standard_monomial_count(const std::vector<MultiPoly>& gb,
                                                     const MonomialOrder& ord,
                                                     const std::vector<Var>& vars_in) {
  std::vector<Var> vars = vars_in;
  const MultiPoly* ref = first_nonzero(gb);
  if (vars.empty() && ref)
    for (Var v = 0; v < ref->ring().size(); ++v) vars.push_back(v);
  std::vector<std::vector<std::uint32_t>> leads;
  bool unit = false;
  for (const auto& g : gb) {
    if (g.is_zero()) continue;
    const Monomial lm = leading_monomial(g, ord);
    bool inside = true;
    std::vector<std::uint32_t> e(vars.size(), 0);
    for (const auto& [v, x] : lm.entries()) {
      auto it = std::find(vars.begin(), vars.end(), v);
      if (it == vars.end()) {
        inside = false;
        break;
      }
      e[it - vars.begin()] = x;
    }
    if (!inside) continue;
    if (lm.is_one()) unit = true;
    leads.push_back(std::move(e));
  }
  if (unit) return 0;
  // Zero-dimensional iff every variable has a pure power among the leads.
  for (std::size_t k = 0; k < vars.size(); ++k) {
    bool pure = false;
    for (const auto& e : leads) {
      bool only = e[k] > 0;
      for (std::size_t t = 0; t < e.size() && only; ++t)
        if (t != k && e[t]) only = false;
      if (only) pure = true;
    }
    if (!pure) return std::nullopt;
  }
  std::vector<std::uint32_t> cur(vars.size(), 0);
  auto standard = [&]() {
    for (const auto& e : leads) {
      bool div = true;
      for (std::size_t t = 0; t < e.size() && div; ++t)
        if (e[t] > cur[t]) div = false;
      if (div) return false;
    }
    return true;
  };
  std::uint64_t count = 0;
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == vars.size()) {
      ++count;
      return;
    }
    for (cur[k] = 0; standard(); ++cur[k]) walk(k + 1);
    cur[k] = 0;
  };
  if (vars.empty()) return 1;
  walk(0);
  return count;
}

namespace {

// Polynomials of `gb` free of the last auxiliary variable, mapped back to the
// smaller ring.
std::vector<MultiPoly> eliminate_last(const std::vector<MultiPoly>& gb, const Ring& base) {
  std::vector<MultiPoly> out;
  const Var t = base.size();
  std::vector<Var> map(base.size() + 1);
  for (Var v = 0; v < base.size(); ++v) map[v] = v;
  map[t] = 0;
  for (const auto& g : gb) {
    bool has_t = false;
    for (const auto& [m, c] : g.terms())
      if (m.exponent(t)) has_t = true;
    if (!has_t) out.push_back(g.remap(base, map));
  }
  return out;
}

IdealResult intersect_impl(const std::vector<MultiPoly>& I, const std::vector<MultiPoly>& J,
                           const MonomialOrder& ord, const Budget& budget) {
  IdealResult res;
  const MultiPoly* ref = first_nonzero(I);
  if (!ref || ref->is_zero()) return res;
  const Ring base = ref->ring();
  const Field field = ref->field();
  check_same_ring(I, base, field);
  check_same_ring(J, base, field);
  const Ring ext = base.with_aux(base.aux() + 1);
  const Var t = base.size();
  std::vector<Var> map(base.size());
  for (Var v = 0; v < base.size(); ++v) map[v] = v;
  const MultiPoly tp = MultiPoly::variable(ext, field, t);
  const MultiPoly one_minus_t = MultiPoly::constant(ext, Scalar(field, 1)) - tp;
  std::vector<MultiPoly> gens;
  for (const auto& f : I)
    if (!f.is_zero()) gens.push_back(tp * f.remap(ext, map));
  for (const auto& g : J)
    if (!g.is_zero()) gens.push_back(one_minus_t * g.remap(ext, map));
  const MonomialOrder elim = MonomialOrder::product(MonomialOrder::lex({t}), ord);
  GbResult gb = buchberger(gens, elim, budget);
  res.stats = gb.stats;
  res.status = gb.status;
  res.exceeded = gb.exceeded;
  if (gb.status == GbStatus::Complete) res.gens = eliminate_last(gb.basis, base);
  return res;
}

}  // namespace

IdealResult ideal_intersection(const std::vector<MultiPoly>& I, const std::vector<MultiPoly>& J,
                               const MonomialOrder& ord, const Budget& budget) {
  return intersect_impl(I, J, ord, budget);
}

IdealResult ideal_quotient(const std::vector<MultiPoly>& I, const MultiPoly& g,
                           const MonomialOrder& ord, const Budget& budget) {
  if (g.is_zero()) fail(ErrorCode::ZeroPolynomial, "quotient by the zero polynomial");
  IdealResult res = intersect_impl(I, {g}, ord, budget);
  if (res.status != GbStatus::Complete) return res;
  with_engine(ord, g.ring(), g.field(), [&](auto& e) {
    const auto gp = e.from_multipoly(g);
    for (auto& f : res.gens) f = e.to_multipoly(e.divide_exact(e.from_multipoly(f), gp));
    return 0;
  });
  return res;
}

IdealResult ideal_quotient(const std::vector<MultiPoly>& I, const std::vector<MultiPoly>& J,
                           const MonomialOrder& ord, const Budget& budget) {
  IdealResult acc;
  bool first = true;
  // The time budget covers all steps together.
  auto remaining = [&] {
    Budget b = budget;
    b.max_seconds = std::max(0.0, budget.max_seconds - acc.stats.seconds);
    return b;
  };
  for (const auto& g : J) {
    if (g.is_zero()) continue;
    IdealResult q = ideal_quotient(I, g, ord, remaining());
    acc.stats.pairs_processed += q.stats.pairs_processed;
    acc.stats.seconds += q.stats.seconds;
    if (q.status != GbStatus::Complete) {
      q.stats = acc.stats;
      return q;
    }
    if (first) {
      acc.gens = std::move(q.gens);
      first = false;
      continue;
    }
    IdealResult x = ideal_intersection(acc.gens, q.gens, ord, remaining());
    acc.stats.pairs_processed += x.stats.pairs_processed;
    acc.stats.seconds += x.stats.seconds;
    if (x.status != GbStatus::Complete) {
      x.stats = acc.stats;
      return x;
    }
    acc.gens = std::move(x.gens);
  }
  return acc;
}

struct Reducer::Impl {
  template <class K>
  struct State {
    Engine<K> engine;
    std::vector<typename Engine<K>::P> polys;
    typename Engine<K>::ReducerSet set;
  };
  std::variant<std::monostate, State<FpK>, State<QK>> state;
  Ring ring;
  Field field;

  template <class K>
  void init(K k, const std::vector<MultiPoly>& G, const MonomialOrder& ord) {
    State<K> s{Engine<K>(std::move(k), ord, ring, field), {}, {}};
    for (const auto& g : G) s.polys.push_back(s.engine.from_multipoly(g));
    std::vector<const typename Engine<K>::P*> ptrs;
    for (const auto& p : s.polys) ptrs.push_back(&p);
    s.set = s.engine.make_reducers(ptrs);
    // Moving the vector keeps its buffer, so the pointers stay valid.
    state = std::move(s);
  }
};


Reducer::Reducer(const std::vector<MultiPoly>& G, const MonomialOrder& ord) : impl_(new Impl) {
  const MultiPoly* ref = first_nonzero(G);
  if (!ref) return;
  impl_->ring = ref->ring();
  impl_->field = ref->field();
  check_same_ring(G, impl_->ring, impl_->field);
  if (impl_->field.is_prime()) {
    impl_->init(FpK{impl_->field.characteristic()}, G, ord);
  } else {
    impl_->init(QK{}, G, ord);
  }
}

Reducer::~Reducer() = default;
Reducer::Reducer(Reducer&&) noexcept = default;
Reducer& Reducer::operator=(Reducer&&) noexcept = default;

std::size_t Reducer::size() const {
  return std::visit(
      [](const auto& s) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, std::monostate>) {
          return 0;
        } else {
          return s.polys.size();
        }
      },
      impl_->state);
}

MultiPoly Reducer::reduce(const MultiPoly& f) const {
  return std::visit(
      [&](const auto& s) -> MultiPoly {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, std::monostate>) {
          return f;
        } else {
          return s.engine.to_multipoly(s.engine.normal_form(s.engine.from_multipoly(f), s.set, true));
        }
      },
      impl_->state);
}

MultiPoly Reducer::s_polynomial(std::size_t i, std::size_t j) const {
  return std::visit(
      [&](const auto& s) -> MultiPoly {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, std::monostate>) {
          fail(ErrorCode::InvalidArgument, "empty reducer");
        } else {
          if (s.polys.at(i).empty() || s.polys.at(j).empty())
            fail(ErrorCode::ZeroPolynomial, "S-polynomial of zero polynomial");
          return s.engine.to_multipoly(s.engine.spoly(s.polys[i], s.polys[j]));
        }
      },
      impl_->state);
}

bool Reducer::spair_reduces_to_zero(std::size_t i, std::size_t j) const {
  return std::visit(
      [&](const auto& s) -> bool {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, std::monostate>) {
          fail(ErrorCode::InvalidArgument, "empty reducer");
        } else {
          auto sp = s.engine.spoly(s.polys.at(i), s.polys.at(j));
          return s.engine.normal_form(std::move(sp), s.set, false).empty();
        }
      },
      impl_->state);
}

MultiPoly reduce(const MultiPoly& f, const std::vector<MultiPoly>& G, const MonomialOrder& ord) {
  const MultiPoly* ref = first_nonzero(G);
  if (f.is_zero() || !ref || ref->is_zero()) return f;
  return Reducer(G, ord).reduce(f);
}

SpairSample sample_spairs(const std::vector<MultiPoly>& G, const MonomialOrder& ord,
                          std::size_t samples, std::uint64_t seed,
                          const std::vector<MultiPoly>& reducers) {
  SpairSample out;
  std::vector<Monomial> lms;
  for (const auto& g : G) lms.push_back(leading_monomial(g, ord));
  std::vector<std::pair<std::size_t, std::size_t>> cand;
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      if (lms[i].coprime(lms[j])) {
        ++out.coprime;
      } else {
        cand.emplace_back(i, j);
      }
    }
  out.candidates = cand.size();
  Rng rng(seed);
  // Partial Fisher-Yates: the first `take` entries form the sample.
  const std::size_t take = std::min(samples, cand.size());
  for (std::size_t k = 0; k < take; ++k) {
    std::size_t r = k + static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(cand.size() - k - 1)));
    std::swap(cand[k], cand[r]);
  }
  cand.resize(take);
  std::sort(cand.begin(), cand.end());

  const Reducer gens(G, ord);
  const Reducer red = reducers.empty() ? Reducer(G, ord) : Reducer(reducers, ord);
  for (const auto& [i, j] : cand) {
    ++out.checked;
    const bool zero = reducers.empty() ? gens.spair_reduces_to_zero(i, j)
                                       : red.reduce(gens.s_polynomial(i, j)).is_zero();
    if (zero) {
      ++out.reduced_to_zero;
    } else {
      out.failures.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace resect::poly
