#include "resect/focal/focal.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <numeric>
#include <optional>
#include <tuple>
#include <unordered_map>

#include "resect/algebra/linalg.hpp"
#include "resect/error.hpp"
#include "resect/parallel.hpp"
#include "resect/random.hpp"

namespace resect::focal {

using poly::MonomialOrder;
using poly::Var;

HyperCamera lift(const WorldPoint& q) {
  if (q.size() != 4) fail(ErrorCode::DimensionMismatch, "world point must have 4 coordinates");
  if (algebra::is_zero(q)) fail(ErrorCode::InvalidArgument, "cannot lift the zero vector");
  const Field f = q.front().field();
  Matrix B(f, 3, 12);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t t = 0; t < 4; ++t) B.set(c, 4 * c + t, q[t]);
  return B;
}

Matrix focal_matrix(const std::vector<WorldPoint>& qs, const std::vector<ImagePoint>& obs) {
  const std::size_t k = qs.size();
  if (k == 0) fail(ErrorCode::InvalidArgument, "focal matrix needs at least one point");
  if (obs.size() != k) fail(ErrorCode::DimensionMismatch, "one observation per point required");
  const Field f = qs.front().front().field();
  Matrix M(f, 3 * k, 12 + k);
  for (std::size_t j = 0; j < k; ++j) {
    if (qs[j].size() != 4 || obs[j].size() != 3)
      fail(ErrorCode::DimensionMismatch, "points need 4 and observations 3 coordinates");
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t t = 0; t < 4; ++t) M.set(3 * j + c, 4 * c + t, qs[j][t]);
      M.set(3 * j + c, 12 + j, obs[j][c]);
    }
  }
  return M;
}

bool FocalSpec::operator<(const FocalSpec& o) const {
  return std::make_tuple(camera, k(), std::cref(sigma), std::cref(rows)) <
         std::make_tuple(o.camera, o.k(), std::cref(o.sigma), std::cref(o.rows));
}

void validate(const FocalSpec& spec, std::size_t n) {
  const std::size_t k = spec.k();
  if (k == 0 || spec.rows.size() != k) fail(ErrorCode::InvalidArgument, "spec needs one row set per point");
  if (spec.camera == 0) fail(ErrorCode::InvalidArgument, "camera index is 1-based");
  std::size_t total = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (spec.sigma[j] < 1 || spec.sigma[j] > n || (j > 0 && spec.sigma[j] <= spec.sigma[j - 1]))
      fail(ErrorCode::InvalidArgument, "sigma must be increasing within [1, n]");
    const auto& r = spec.rows[j];
    if (r.empty() || r.size() > 3) fail(ErrorCode::InvalidArgument, "row set must have 1 to 3 rows");
    for (std::size_t t = 0; t < r.size(); ++t)
      if (r[t] < 1 || r[t] > 3 || (t > 0 && r[t] <= r[t - 1]))
        fail(ErrorCode::InvalidArgument, "rows must be increasing within {1,2,3}");
    total += r.size();
  }
  if (total != 12 + k) fail(ErrorCode::InvalidArgument, "rows must total 12 + k for a maximal minor");
}

namespace {

const std::vector<std::vector<std::uint32_t>> kRowChoices = {{1, 2}, {1, 2, 3}, {1, 3}, {2, 3}};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All increasing k-subsets of {1..n}, lexicographically.
std::vector<std::vector<std::uint32_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> s(k);
  std::iota(s.begin(), s.end(), 1u);
  if (k > n) return out;
  for (;;) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i) --i;
    if (i == 0) return out;
    ++s[i - 1];
    for (std::size_t t = i; t < k; ++t) s[t] = s[t - 1] + 1;
  }
}

// Row assignments with sizes 2 or 3 totalling 12 + k, in lexicographic order.
void for_each_rows(std::size_t k, const std::function<bool(const std::vector<std::vector<std::uint32_t>>&)>& visit) {
  std::vector<std::vector<std::uint32_t>> rows(k);
  const std::size_t target = 12 + k;
  bool stop = false;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t used) {
    if (stop) return;
    if (j == k) {
      if (used == target && !visit(rows)) stop = true;
      return;
    }
    const std::size_t left = k - j - 1;
    for (const auto& choice : kRowChoices) {
      const std::size_t u = used + choice.size();
      if (u + 2 * left > target || u + 3 * left < target) continue;
      rows[j] = choice;
      rec(j + 1, u);
      if (stop) return;
    }
  };
  rec(0, 0);
}

}  // namespace

std::uint64_t primitive_spec_count(std::size_t n, std::size_t m) {
  std::uint64_t total = 0;
  for (std::size_t k = 6; k <= std::min<std::size_t>(n, 12); ++k) {
    std::uint64_t per = binomial(k, 12 - k);
    for (std::size_t t = 0; t < 2 * k - 12; ++t) per *= 3;
    total += binomial(n, k) * per;
  }
  return total * m;
}

std::vector<FocalSpec> primitive_specs(std::size_t n, std::size_t m) {
  std::vector<FocalSpec> out;
  for (std::uint32_t i = 1; i <= m; ++i)
    for (std::size_t k = 6; k <= std::min<std::size_t>(n, 12); ++k)
      for (const auto& sigma : subsets(n, k))
        for_each_rows(k, [&](const auto& rows) {
          out.push_back(FocalSpec{i, sigma, rows});
          return true;
        });
  return out;
}

MultiPoly k_focal(const std::vector<WorldPoint>& qbar, const FocalSpec& spec, const Ring& ring) {
  validate(spec, qbar.size());
  if (spec.camera > ring.cameras() || qbar.size() != ring.points())
    fail(ErrorCode::DimensionMismatch, "spec does not fit the ring");
  const Field f = qbar.front().front().field();
  const std::size_t k = spec.k();
  MultiPoly out(ring, f);

  // Determinants of the 4x4 matrices of points (rows in increasing order),
  // keyed by the bitmask of positions within sigma.
  std::vector<std::optional<Scalar>> dets(std::size_t{1} << k);
  auto det4 = [&](std::uint32_t mask) -> const Scalar& {
    auto& slot = dets[mask];
    if (!slot) {
      std::vector<Vector> rows;
      for (std::size_t j = 0; j < k; ++j)
        if (mask >> j & 1) rows.push_back(qbar[spec.sigma[j] - 1]);
      slot = algebra::determinant(Matrix::from_rows(f, rows));
    }
    return *slot;
  };

  std::vector<std::size_t> offset(k, 0);
  for (std::size_t j = 1; j < k; ++j) offset[j] = offset[j - 1] + spec.rows[j - 1].size();
  // Sum of p-column indices 13..12+k in the minor.
  const std::size_t col_sum = k * 12 + k * (k + 1) / 2;

  std::vector<std::uint32_t> pick(k);
  std::array<int, 3> load{0, 0, 0};
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == k) {
      std::size_t row_sum = col_sum;
      std::array<std::uint32_t, 3> mask{0, 0, 0};
      std::vector<std::uint32_t> seq;
      for (std::size_t t = 0; t < k; ++t) {
        const auto& r = spec.rows[t];
        for (std::size_t u = 0; u < r.size(); ++u) {
          if (r[u] == pick[t]) {
            row_sum += offset[t] + u + 1;
          } else {
            seq.push_back(r[u]);
            mask[r[u] - 1] |= 1u << t;
          }
        }
      }
      std::size_t inversions = 0;
      for (std::size_t a = 0; a < seq.size(); ++a)
        for (std::size_t b = a + 1; b < seq.size(); ++b) inversions += seq[a] > seq[b];
      Scalar c = det4(mask[0]) * det4(mask[1]) * det4(mask[2]);
      if (c.is_zero()) return;
      if ((row_sum + inversions) % 2) c = -c;
      std::vector<Monomial::Entry> e;
      for (std::size_t t = 0; t < k; ++t) e.emplace_back(ring.var(spec.camera, spec.sigma[t], pick[t]), 1);
      out.add_term(Monomial(std::move(e)), c);
      return;
    }
    const auto& r = spec.rows[j];
    for (std::uint32_t t : r) {
      bool ok = true;
      for (std::uint32_t c : r)
        if (c != t && ++load[c - 1] > 4) ok = false;
      if (ok) {
        pick[j] = t;
        rec(j + 1);
      }
      for (std::uint32_t c : r)
        if (c != t) --load[c - 1];
    }
  };
  rec(0);
  return out;
}

namespace {

// Shared layout of the 12x12 reduction: pivot one nonzero observation
// coordinate per point, eliminate the p-columns, and keep the other rows.
// Returns false when some point has no nonzero coordinate among its rows.
template <class Emit>
bool reduce_rows(const std::vector<ImagePoint>& obs, const FocalSpec& spec, std::size_t& row_sum,
                 Emit&& emit) {
  const std::size_t k = spec.k();
  row_sum = k * 12 + k * (k + 1) / 2;
  std::size_t offset = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const auto& p = obs[spec.sigma[j] - 1];
    const auto& r = spec.rows[j];
    std::size_t piv = r.size();
    for (std::size_t u = 0; u < r.size(); ++u)
      if (!p[r[u] - 1].is_zero()) {
        piv = u;
        break;
      }
    if (piv == r.size()) return false;
    row_sum += offset + piv + 1;
    for (std::size_t u = 0; u < r.size(); ++u)
      if (u != piv) emit(j, r[u], r[piv]);
    offset += r.size();
  }
  return true;
}

}  // namespace

Scalar evaluate_spec(const std::vector<WorldPoint>& qbar, const std::vector<ImagePoint>& obs,
                     const FocalSpec& spec) {
  validate(spec, qbar.size());
  if (obs.size() != qbar.size()) fail(ErrorCode::DimensionMismatch, "one observation per point required");
  const Field f = qbar.front().front().field();

  // Row (j, c) with pivot t becomes p[t] * q in block c minus p[c] * q in
  // block t; that scales the determinant by p[t] for every non-pivot row,
  // while the pivot entries themselves contribute prod p[t].
  Matrix R(f, 12, 12);
  Scalar scale(f, 1);
  std::size_t row = 0;
  std::size_t row_sum = 0;
  const bool nonzero = reduce_rows(obs, spec, row_sum, [&](std::size_t j, std::uint32_t c, std::uint32_t t) {
    const auto& q = qbar[spec.sigma[j] - 1];
    const auto& p = obs[spec.sigma[j] - 1];
    for (std::size_t s = 0; s < 4; ++s) {
      R.set(row, 4 * (c - 1) + s, p[t - 1] * q[s]);
      R.set(row, 4 * (t - 1) + s, -(p[c - 1] * q[s]));
    }
    ++row;
  });
  if (!nonzero) return Scalar(f);
  for (std::size_t j = 0; j < spec.k(); ++j) {
    const auto& p = obs[spec.sigma[j] - 1];
    const auto& r = spec.rows[j];
    for (std::uint32_t c : r)
      if (!p[c - 1].is_zero()) {
        if (r.size() == 1) scale /= p[c - 1];
        for (std::size_t e = 0; e + 2 < r.size(); ++e) scale *= p[c - 1];
        break;
      }
  }
  Scalar d = algebra::determinant(R) / scale;
  return row_sum % 2 ? -d : d;
}

namespace {

// Mod-p evaluation of all primitive specs of one camera; true if all vanish.
bool all_vanish_mod_p(const std::vector<WorldPoint>& qbar, const std::vector<ImagePoint>& obs,
                      unsigned jobs) {
  const std::uint32_t P = qbar.front().front().field().characteristic();
  const std::size_t n = qbar.size();
  std::vector<std::array<std::uint32_t, 4>> q(n);
  std::vector<std::array<std::uint32_t, 3>> p(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t s = 0; s < 4; ++s) q[j][s] = qbar[j][s].residue();
    for (std::size_t c = 0; c < 3; ++c) p[j][c] = obs[j][c].residue();
  }
  std::vector<std::vector<std::uint32_t>> sigmas;
  for (std::size_t k = 6; k <= std::min<std::size_t>(n, 12); ++k)
    for (auto& s : subsets(n, k)) sigmas.push_back(std::move(s));

  std::atomic<bool> found{false};
  parallel_for(sigmas.size(), jobs, [&](std::size_t idx) {
    if (found) return;
    const auto& sigma = sigmas[idx];
    const std::size_t k = sigma.size();
    std::vector<std::uint32_t> a(144);
    for_each_rows(k, [&](const auto& rows) {
      if (found) return false;
      std::fill(a.begin(), a.end(), 0u);
      std::size_t row = 0;
      for (std::size_t j = 0; j < k; ++j) {
        const auto& pj = p[sigma[j] - 1];
        const auto& qj = q[sigma[j] - 1];
        const auto& r = rows[j];
        std::size_t piv = r.size();
        for (std::size_t u = 0; u < r.size(); ++u)
          if (pj[r[u] - 1] != 0) {
            piv = u;
            break;
          }
        if (piv == r.size()) return true;  // this minor is zero
        const std::uint64_t pt = pj[r[piv] - 1];
        for (std::size_t u = 0; u < r.size(); ++u) {
          if (u == piv) continue;
          const std::uint64_t pc = pj[r[u] - 1];
          for (std::size_t s = 0; s < 4; ++s) {
            a[row * 12 + 4 * (r[u] - 1) + s] = static_cast<std::uint32_t>(pt * qj[s] % P);
            a[row * 12 + 4 * (r[piv] - 1) + s] = static_cast<std::uint32_t>((P - pc) * qj[s] % P);
          }
          ++row;
        }
      }
      if (algebra::detail::det_mod_p(a, 12, P) != 0) found = true;
      return !found;
    });
  });
  return !found;
}

}  // namespace

bool membership(const std::vector<WorldPoint>& qbar,
                const std::vector<std::vector<ImagePoint>>& obs) {
  if (!scenes::no_four_coplanar(qbar)) fail(ErrorCode::Genericity, "four world points are coplanar");
  const std::size_t n = qbar.size();
  for (const auto& row : obs) {
    if (row.size() != n) fail(ErrorCode::DimensionMismatch, "observation row has the wrong length");
    if (algebra::rank(focal_matrix(qbar, row)) >= 12 + n) return false;
  }
  return true;
}

bool evaluation_membership(const std::vector<WorldPoint>& qbar,
                           const std::vector<std::vector<ImagePoint>>& obs, unsigned jobs) {
  if (!scenes::no_four_coplanar(qbar)) fail(ErrorCode::Genericity, "four world points are coplanar");
  const std::size_t n = qbar.size();
  const Field f = qbar.front().front().field();
  for (const auto& row : obs) {
    if (row.size() != n) fail(ErrorCode::DimensionMismatch, "observation row has the wrong length");
    if (f.is_prime()) {
      if (!all_vanish_mod_p(qbar, row, jobs)) return false;
      continue;
    }
    for (std::size_t k = 6; k <= std::min<std::size_t>(n, 12); ++k)
      for (const auto& sigma : subsets(n, k)) {
        bool zero = true;
        for_each_rows(k, [&](const auto& rows) {
          zero = evaluate_spec(qbar, row, FocalSpec{1, sigma, rows}).is_zero();
          return zero;
        });
        if (!zero) return false;
      }
  }
  return true;
}

FocalSystem generators(const std::vector<WorldPoint>& qbar, std::size_t m,
                       const GeneratorOptions& opts) {
  const std::size_t n = qbar.size();
  if (n < 6) fail(ErrorCode::InvalidArgument, "k-focals need at least six points");
  if (m < 1) fail(ErrorCode::InvalidArgument, "need at least one camera");
  if (!scenes::no_four_coplanar(qbar)) fail(ErrorCode::Genericity, "four world points are coplanar");
  const std::uint64_t count = primitive_spec_count(n, m);
  if (count > opts.max_specs)
    fail(ErrorCode::InvalidArgument, std::to_string(count) + " specs exceed the expansion limit of " +
                                         std::to_string(opts.max_specs));
  FocalSystem sys;
  sys.ring = Ring(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n));
  sys.field = qbar.front().front().field();
  const auto specs = primitive_specs(n, m);
  std::vector<MultiPoly> polys(specs.size());
  parallel_for(specs.size(), opts.jobs, [&](std::size_t t) { polys[t] = k_focal(qbar, specs[t], sys.ring); });

  const MonomialOrder lex = MonomialOrder::pinned_lex(sys.ring);
  std::unordered_map<std::string, std::vector<std::size_t>> seen;  // leading monomial -> entries
  std::vector<MultiPoly> normalized;
  sys.specs = specs.size();
  for (std::size_t t = 0; t < specs.size(); ++t) {
    if (polys[t].is_zero()) {
      ++sys.zeros;
      continue;
    }
    MultiPoly nf = poly::monic(polys[t], lex);
    auto& bucket = seen[poly::leading_monomial(nf, lex).to_string(sys.ring)];
    bool dup = false;
    for (std::size_t e : bucket) dup = dup || normalized[e] == nf;
    if (dup) {
      ++sys.duplicates;
      continue;
    }
    bucket.push_back(normalized.size());
    normalized.push_back(std::move(nf));
    sys.entries.push_back({specs[t], std::move(polys[t])});
  }
  return sys;
}

std::vector<MultiPoly> polynomials(const FocalSystem& sys) {
  std::vector<MultiPoly> out;
  for (const auto& e : sys.entries) out.push_back(e.poly);
  return out;
}

Resection resect_dlt(const std::vector<WorldPoint>& qbar, const std::vector<ImagePoint>& obs) {
  const std::size_t n = qbar.size();
  if (n < 6) fail(ErrorCode::InvalidArgument, "resectioning needs at least six points");
  const auto K = algebra::kernel_basis(focal_matrix(qbar, obs));
  if (K.empty()) fail(ErrorCode::InconsistentData, "focal matrix has full column rank");
  if (K.size() > 1)
    fail(ErrorCode::DegenerateArrangement, "kernel has dimension " + std::to_string(K.size()));
  const Vector& v = K.front();
  const Field f = v.front().field();
  Resection res{Matrix(f, 3, 4), {}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 4; ++c) res.camera.set(r, c, v[4 * r + c]);
  for (std::size_t j = 0; j < n; ++j) res.lambda.push_back(-v[12 + j]);
  return res;
}

namespace {

constexpr std::uint32_t kCheckPrime = 2147483647u;

// Columns of the 12 x 3n matrix as integers (each scaled by its denominators).
std::vector<std::vector<mpz_class>> integer_columns(const std::vector<HyperCamera>& hcams) {
  std::vector<std::vector<mpz_class>> cols;
  for (const auto& B : hcams) {
    if (B.rows() != 3 || B.cols() != 12) fail(ErrorCode::DimensionMismatch, "hypercameras are 3x12");
    for (std::size_t r = 0; r < 3; ++r) {
      mpz_class l = 1;
      for (std::size_t c = 0; c < 12; ++c)
        if (!B.field().is_prime()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), B(r, c).rational().get_den_mpz_t());
      std::vector<mpz_class> col;
      for (std::size_t c = 0; c < 12; ++c) {
        if (B.field().is_prime()) {
          col.emplace_back(B(r, c).residue());
        } else {
          const mpq_class& x = B(r, c).rational();
          col.push_back(x.get_num() * (l / x.get_den()));
        }
      }
      cols.push_back(std::move(col));
    }
  }
  return cols;
}

}  // namespace

GenericityReport minor_generic(const std::vector<HyperCamera>& hcams, std::uint64_t samples,
                               std::uint64_t seed) {
  GenericityReport rep;
  const auto cols = integer_columns(hcams);
  const std::size_t N = cols.size();
  if (N < 12) return rep;
  const bool prime = hcams.front().field().is_prime();
  const std::uint32_t P = prime ? hcams.front().field().characteristic() : kCheckPrime;
  std::vector<std::vector<std::uint32_t>> res(N, std::vector<std::uint32_t>(12));
  for (std::size_t c = 0; c < N; ++c)
    for (std::size_t r = 0; r < 12; ++r) {
      mpz_class x = cols[c][r] % P;
      if (x < 0) x += P;
      res[c][r] = static_cast<std::uint32_t>(x.get_ui());
    }
  std::vector<std::uint32_t> a(144);
  auto nonzero = [&](const std::vector<std::size_t>& pick) {
    for (std::size_t r = 0; r < 12; ++r)
      for (std::size_t t = 0; t < 12; ++t) a[r * 12 + t] = res[pick[t]][r];
    if (algebra::detail::det_mod_p(a, 12, P) != 0) return true;
    if (prime) return false;
    std::vector<mpz_class> z(144);
    for (std::size_t r = 0; r < 12; ++r)
      for (std::size_t t = 0; t < 12; ++t) z[r * 12 + t] = cols[pick[t]][r];
    return algebra::detail::det_bareiss(z, 12) != 0;
  };
  std::vector<std::size_t> pick(12);
  if (N <= 24) {
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    for (;;) {
      ++rep.checked;
      if (!nonzero(pick)) {
        rep.holds = false;
        return rep;
      }
      std::size_t i = 12;
      while (i > 0 && pick[i - 1] == N - 12 + i - 1) --i;
      if (i == 0) return rep;
      ++pick[i - 1];
      for (std::size_t t = i; t < 12; ++t) pick[t] = pick[t - 1] + 1;
    }
  }
  rep.exhaustive = false;
  Rng rng(seed);
  std::vector<std::size_t> pool(N);
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t t = 0; t < 12; ++t) {
      const auto u = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(t), N - 1));
      std::swap(pool[t], pool[u]);
      pick[t] = pool[t];
    }
    std::sort(pick.begin(), pick.end());
    ++rep.checked;
    if (!nonzero(pick)) {
      rep.holds = false;
      return rep;
    }
  }
  return rep;
}

GenericityReport rowspan_uniform(const std::vector<HyperCamera>& hcams, std::uint64_t samples,
                                 std::uint64_t seed) {
  GenericityReport rep;
  const std::size_t n = hcams.size();
  if (n < 4) return rep;
  auto spans = [&](const std::vector<std::uint32_t>& s) {
    std::vector<Matrix> blocks;
    for (auto j : s) blocks.push_back(hcams[j - 1]);
    return algebra::rank(algebra::vstack(blocks)) == 12;
  };
  if (n <= 10) {
    for (const auto& s : subsets(n, 4)) {
      ++rep.checked;
      if (!spans(s)) {
        rep.holds = false;
        return rep;
      }
    }
    return rep;
  }
  rep.exhaustive = false;
  Rng rng(seed);
  std::vector<std::uint32_t> pool(n);
  for (std::uint64_t t = 0; t < samples; ++t) {
    std::iota(pool.begin(), pool.end(), 1u);
    for (std::size_t u = 0; u < 4; ++u)
      std::swap(pool[u], pool[static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(u), n - 1))]);
    std::vector<std::uint32_t> s(pool.begin(), pool.begin() + 4);
    std::sort(s.begin(), s.end());
    ++rep.checked;
    if (!spans(s)) {
      rep.holds = false;
      return rep;
    }
  }
  return rep;
}

MultiPoly change_coordinates(const MultiPoly& f, const std::vector<Matrix>& H) {
  const Ring& ring = f.ring();
  if (H.size() != static_cast<std::size_t>(ring.cameras()) * ring.points())
    fail(ErrorCode::DimensionMismatch, "need one 3x3 change per image block");
  MultiPoly out(ring, f.field());
  for (const auto& [mono, c] : f.terms()) {
    MultiPoly term = MultiPoly::constant(ring, c);
    for (const auto& [v, e] : mono.entries()) {
      if (ring.is_aux(v)) fail(ErrorCode::InvalidArgument, "auxiliary variables cannot be transformed");
      const std::uint32_t b = ring.block(v), row = v % 3;
      MultiPoly lin(ring, f.field());
      for (std::uint32_t d = 0; d < 3; ++d) lin.add_term(Monomial::of(3 * b + d), H[b](row, d));
      for (std::uint32_t t = 0; t < e; ++t) term = term * lin;
    }
    out += term;
  }
  return out;
}

GinResult gin_leading(const std::vector<WorldPoint>& qbar, std::uint64_t seed, bool identity_change) {
  if (qbar.size() != 6) fail(ErrorCode::InvalidArgument, "the hypersurface case has six points");
  if (!scenes::no_four_coplanar(qbar)) fail(ErrorCode::Genericity, "four world points are coplanar");
  const Field f = qbar.front().front().field();
  const Ring ring(1, 6);
  FocalSpec spec{1, {1, 2, 3, 4, 5, 6}, std::vector<std::vector<std::uint32_t>>(6, {1, 2, 3})};
  MultiPoly base = k_focal(qbar, spec, ring);
  GinResult out;
  Rng rng(seed);
  for (std::size_t j = 0; j < 6; ++j) {
    if (identity_change) {
      out.changes.push_back(Matrix::identity(f, 3));
      continue;
    }
    for (;;) {
      Matrix H(f, 3, 3);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) H.set(r, c, scenes::random_scalar(f, rng));
      if (algebra::rank(H) == 3) {
        out.changes.push_back(std::move(H));
        break;
      }
    }
  }
  out.poly = identity_change ? base : change_coordinates(base, out.changes);
  out.support = out.poly.size();
  out.leading = poly::leading_monomial(out.poly, MonomialOrder::pinned_lex(ring));
  return out;
}

}  // namespace resect::focal
