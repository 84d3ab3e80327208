#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "resect/poly/groebner.hpp"

namespace resect::ed {

enum class CriticalFormulation {
  // H plus the 2x2 minors of [u - data; grad H], quotient by <dH/du1, dH/dv1>.
  MinorsQuotient,
  // H and u - data = lambda grad H in one extra variable.
  Lagrange,
};

const char* to_string(CriticalFormulation f);

struct Degree68Options {
  std::uint64_t seed = 3;
  std::uint32_t prime = 32003;
  CriticalFormulation formulation = CriticalFormulation::MinorsQuotient;
  poly::Budget budget;  // max_seconds is the budget for the whole pipeline
};

struct Degree68Result {
  bool complete = false;
  std::optional<std::uint64_t> count;  // standard monomials of the critical ideal
  std::string exceeded;                // budget that ran out, if any
  std::string stage;                   // stage that ran out
  std::size_t hypersurface_terms = 0;
  std::size_t critical_generators = 0;
  std::size_t basis_size = 0;
  std::size_t pairs_processed = 0;
  double wall_time_s = 0.0;
};

struct CriticalCount {
  bool complete = false;
  std::optional<std::uint64_t> count;
  std::string exceeded;
  std::string stage;
  std::size_t generators = 0;
  std::size_t basis_size = 0;
  std::size_t pairs_processed = 0;
};

/// Number of critical points, with multiplicity, of the squared distance
/// from `data` to the affine hypersurface {H = 0} in the variables `vars`.
/// With Lagrange the ring of H needs one auxiliary variable (the last one)
/// for the multiplier. The quotient variable is grad H[quotient_vars].
CriticalCount critical_point_count(const poly::MultiPoly& H, const std::vector<poly::Var>& vars,
                                   const std::vector<algebra::Scalar>& data, CriticalFormulation formulation,
                                   const std::vector<std::size_t>& quotient_vars, const poly::Budget& budget);

/// ED degree of the 6-point focal hypersurface in the affine chart p[3] = 1,
/// computed over F_p from random world points and random data.
Degree68Result degree68(const Degree68Options& opts);

}  // namespace resect::ed
