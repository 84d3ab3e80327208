#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "resect/poly/multipoly.hpp"

namespace resect::poly {

struct Budget {
  std::size_t max_pairs = 2'000'000;
  std::size_t max_terms = 5'000'000;
  std::size_t max_basis = 200'000;
  // Compared with the larger of resident memory and the estimated size of
  // basis elements and pending pairs.
  std::size_t max_memory = std::size_t{5} << 29;  // 2.5 GiB
  double max_seconds = std::numeric_limits<double>::infinity();
};

enum class GbStatus { Complete, BudgetExceeded };

struct GbStats {
  std::size_t pairs_processed = 0;
  std::size_t pairs_pruned = 0;
  std::size_t zero_reductions = 0;
  std::size_t max_degree = 0;
  double seconds = 0.0;
};

struct GbResult {
  GbStatus status = GbStatus::Complete;
  std::string exceeded;  // which budget ran out, if any
  std::vector<MultiPoly> basis;
  GbStats stats;
};

/// Reduced Groebner basis of the ideal generated by `gens`, or a partial
/// basis with status BudgetExceeded.
GbResult buchberger(const std::vector<MultiPoly>& gens, const MonomialOrder& ord,
                    const Budget& budget = {});

/// Number of monomials in `vars` (all ring variables when empty) outside the
/// ideal generated by the leading monomials of `gb`. nullopt means infinite.
std::optional<std::uint64_t> standard_monomial_count(const std::vector<MultiPoly>& gb,
                                                     const MonomialOrder& ord,
                                                     const std::vector<Var>& vars = {});

struct IdealResult {
  GbStatus status = GbStatus::Complete;
  std::string exceeded;
  std::vector<MultiPoly> gens;
  GbStats stats;
};

/// Generators of I : <g>, from I ∩ <g> computed by eliminating an auxiliary
/// variable t from t I + (1 - t) <g>, then dividing by g.
IdealResult ideal_quotient(const std::vector<MultiPoly>& I, const MultiPoly& g,
                           const MonomialOrder& ord, const Budget& budget = {});
/// I : J = intersection of I : <g> over the generators g of J.
IdealResult ideal_quotient(const std::vector<MultiPoly>& I, const std::vector<MultiPoly>& J,
                           const MonomialOrder& ord, const Budget& budget = {});
IdealResult ideal_intersection(const std::vector<MultiPoly>& I, const std::vector<MultiPoly>& J,
                               const MonomialOrder& ord, const Budget& budget = {});

/// Repeated normal forms against a fixed list.
class Reducer {
 public:
  Reducer(const std::vector<MultiPoly>& G, const MonomialOrder& ord);
  ~Reducer();
  Reducer(Reducer&&) noexcept;
  Reducer& operator=(Reducer&&) noexcept;

  MultiPoly reduce(const MultiPoly& f) const;
  MultiPoly s_polynomial(std::size_t i, std::size_t j) const;
  // Normal form of S(G[i], G[j]) modulo G is zero.
  bool spair_reduces_to_zero(std::size_t i, std::size_t j) const;
  std::size_t size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct SpairSample {
  std::size_t candidates = 0;  // pairs with non-coprime leading monomials
  std::size_t coprime = 0;     // pairs skipped by the coprime criterion
  std::size_t checked = 0;
  std::size_t reduced_to_zero = 0;
  std::vector<std::pair<std::size_t, std::size_t>> failures;
};

/// Samples up to `samples` S-pairs among the pairs of G with non-coprime
/// leading monomials (all of them if fewer) and reduces each modulo
/// `reducers` (G itself when empty).
SpairSample sample_spairs(const std::vector<MultiPoly>& G, const MonomialOrder& ord,
                          std::size_t samples, std::uint64_t seed,
                          const std::vector<MultiPoly>& reducers = {});

}  // namespace resect::poly
