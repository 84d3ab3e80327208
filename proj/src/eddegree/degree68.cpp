#include "resect/eddegree/degree68.hpp"

#include <chrono>

#include "resect/error.hpp"
#include "resect/focal/focal.hpp"
#include "resect/random.hpp"
#include "resect/scenes/scene.hpp"

namespace resect::ed {

using algebra::Field;
using algebra::Scalar;
using poly::GbStatus;
using poly::MonomialOrder;
using poly::MultiPoly;
using poly::Ring;
using poly::Var;

const char* to_string(CriticalFormulation f) {
  return f == CriticalFormulation::Lagrange ? "lagrange" : "minors_quotient";
}

CriticalCount critical_point_count(const MultiPoly& H, const std::vector<Var>& vars,
                                   const std::vector<Scalar>& data, CriticalFormulation formulation,
                                   const std::vector<std::size_t>& quotient_vars, const poly::Budget& budget) {
  if (data.size() != vars.size()) fail(ErrorCode::DimensionMismatch, "one data value per variable");
  const auto start = std::chrono::steady_clock::now();
  auto remaining = [&] {
    return budget.max_seconds - std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  const Ring& ring = H.ring();
  const Field f = H.field();
  std::vector<MultiPoly> diff, grad;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    diff.push_back(MultiPoly::variable(ring, f, vars[k]) - MultiPoly::constant(ring, data[k]));
    grad.push_back(H.derivative(vars[k]));
  }

  CriticalCount res;
  poly::Budget b = budget;
  std::vector<MultiPoly> gens{H};
  std::vector<Var> count_vars = vars;
  MonomialOrder ord;
  if (formulation == CriticalFormulation::Lagrange) {
    if (ring.aux() == 0) fail(ErrorCode::InvalidArgument, "the multiplier needs an auxiliary variable");
    const Var lambda = ring.size() - 1;
    const MultiPoly lam = MultiPoly::variable(ring, f, lambda);
    for (std::size_t k = 0; k < vars.size(); ++k) gens.push_back(diff[k] - lam * grad[k]);
    count_vars.push_back(lambda);
    ord = MonomialOrder::grevlex(count_vars);
    res.generators = gens.size();
  } else {
    for (std::size_t a = 0; a < vars.size(); ++a)
      for (std::size_t c = a + 1; c < vars.size(); ++c) {
        MultiPoly minor = diff[a] * grad[c] - diff[c] * grad[a];
        if (!minor.is_zero()) gens.push_back(std::move(minor));
      }
    res.generators = gens.size();
    ord = MonomialOrder::grevlex(vars);
    std::vector<MultiPoly> J;
    for (std::size_t k : quotient_vars) J.push_back(grad.at(k));
    if (!J.empty()) {
      b.max_seconds = remaining();
      const auto q = poly::ideal_quotient(gens, J, ord, b);
      res.pairs_processed += q.stats.pairs_processed;
      if (q.status != GbStatus::Complete) {
        res.stage = "quotient";
        res.exceeded = q.exceeded;
        return res;
      }
      gens = q.gens;
    }
  }

  b.max_seconds = remaining();
  const auto gb = poly::buchberger(gens, ord, b);
  res.pairs_processed += gb.stats.pairs_processed;
  if (gb.status != GbStatus::Complete) {
    res.stage = "groebner";
    res.exceeded = gb.exceeded;
    return res;
  }
  res.basis_size = gb.basis.size();
  res.count = poly::standard_monomial_count(gb.basis, ord, count_vars);
  res.complete = true;
  return res;
}

Degree68Result degree68(const Degree68Options& opts) {
  const auto start = std::chrono::steady_clock::now();
  const Field f = Field::prime(opts.prime);
  Degree68Result res;

  const auto qbar = scenes::random_arrangement(6, opts.seed, f);
  const MultiPoly H6 = focal::polynomials(focal::generators(qbar, 1)).front();

  const Ring ring(1, 6, 1);
  std::vector<Var> same(H6.ring().size());
  for (Var v = 0; v < same.size(); ++v) same[v] = v;
  MultiPoly H = H6.remap(ring, same);
  std::vector<Var> uv;
  for (std::uint32_t j = 1; j <= 6; ++j) {
    H = H.substitute(ring.var(1, j, 3), Scalar(f, 1));
    uv.push_back(ring.var(1, j, 1));
    uv.push_back(ring.var(1, j, 2));
  }
  res.hypersurface_terms = H.size();

  Rng rng(opts.seed ^ 0xed68ULL);
  std::vector<Scalar> data;
  for (std::size_t k = 0; k < uv.size(); ++k) data.emplace_back(f, rng.uniform_int(0, opts.prime - 1));

  const auto c = critical_point_count(H, uv, data, opts.formulation, {0, 1}, opts.budget);
  res.complete = c.complete;
  res.count = c.count;
  res.exceeded = c.exceeded;
  res.stage = c.stage;
  res.critical_generators = c.generators;
  res.basis_size = c.basis_size;
  res.pairs_processed = c.pairs_processed;
  res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace resect::ed
