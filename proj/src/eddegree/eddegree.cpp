#include "resect/eddegree/eddegree.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "resect/error.hpp"
#include "resect/parallel.hpp"
#include "resect/random.hpp"

namespace resect::ed {

namespace {

cd complex_normal(Rng& rng) {
  const double a = rng.normal();
  const double b = rng.normal();
  return cd(a, b) / std::sqrt(2.0);
}

VectorC complex_normal_vector(Rng& rng, int size) {
  VectorC v(size);
  for (int i = 0; i < size; ++i) v[i] = complex_normal(rng);
  return v;
}

MatrixC lift(const VectorC& q) {
  MatrixC L = MatrixC::Zero(3, 12);
  for (int c = 0; c < 3; ++c)
    for (int k = 0; k < 4; ++k) L(c, 4 * c + k) = q[k];
  return L;
}

void check_finite(const VectorC& x) {
  for (int i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i].real()) || !std::isfinite(x[i].imag()))
      fail(ErrorCode::InvalidArgument, "non-finite coordinate");
}

// Per-block quantities shared by psi, its Jacobian and the critical system.
struct BlockEval {
  cd s;
  cd phi[2];
  VectorC g[2];  // gradients of phi
  double relative_denominator;
};

BlockEval block_eval(const MatrixC& B, const VectorC& x, bool gradients) {
  BlockEval e;
  const VectorC y = B * x;
  e.s = y[2];
  const double scale = B.row(2).norm() * x.norm();
  e.relative_denominator = scale > 0 ? std::abs(e.s) / scale : 0.0;
  if (e.s == cd(0)) return e;
  for (int r = 0; r < 2; ++r) {
    e.phi[r] = y[r] / e.s;
    if (gradients) e.g[r] = (B.row(r).transpose() - e.phi[r] * B.row(2).transpose()) / e.s;
  }
  return e;
}

double relative_distance(const VectorC& a, const VectorC& b) {
  return (a - b).norm() / std::max(1.0, a.norm());
}

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

const char* to_string(MapKind kind) {
  return kind == MapKind::Resectioning ? "resectioning" : "multiview";
}

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::Success: return "success";
    case PathStatus::StepUnderflow: return "step_underflow";
    case PathStatus::CorrectorDivergence: return "corrector_divergence";
    case PathStatus::ChartDegeneration: return "chart_degeneration";
    case PathStatus::StepLimit: return "step_limit";
  }
  return "unknown";
}

ParamMap resectioning_map(const std::vector<VectorC>& points) {
  ParamMap map;
  map.kind = MapKind::Resectioning;
  for (const auto& q : points) {
    if (q.size() != 4) fail(ErrorCode::DimensionMismatch, "world points must have 4 coordinates");
    map.blocks.push_back(lift(q));
  }
  return map;
}

ParamMap multiview_map(const std::vector<MatrixC>& cameras) {
  ParamMap map;
  map.kind = MapKind::Multiview;
  for (const auto& A : cameras) {
    if (A.rows() != 3 || A.cols() != 4) fail(ErrorCode::DimensionMismatch, "cameras must be 3x4");
    map.blocks.push_back(A);
  }
  return map;
}

ParamMap random_resectioning_map(int n, std::uint64_t data_seed) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be positive");
  Rng rng(data_seed);
  std::vector<VectorC> points;
  for (int j = 0; j < n; ++j) {
    VectorC q(4);
    for (int k = 0; k < 4; ++k) q[k] = rng.normal();
    points.push_back(q);
  }
  return resectioning_map(points);
}

ParamMap random_multiview_map(int m, std::uint64_t data_seed) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be positive");
  Rng rng(data_seed);
  std::vector<MatrixC> cameras;
  for (int i = 0; i < m; ++i) {
    MatrixC A(3, 4);
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 4; ++k) A(r, k) = rng.normal();
    cameras.push_back(A);
  }
  return multiview_map(cameras);
}

VectorC psi_eval(const ParamMap& map, const VectorC& x) {
  if (x.size() != map.dim()) fail(ErrorCode::DimensionMismatch, "psi: wrong input size");
  check_finite(x);
  VectorC out(map.outputs());
  for (std::size_t j = 0; j < map.blocks.size(); ++j) {
    const BlockEval e = block_eval(map.blocks[j], x, false);
    if (e.relative_denominator < kChartTolerance)
      fail(ErrorCode::ChartViolation, "psi: point " + std::to_string(j + 1) + " off the chart");
    out[2 * j] = e.phi[0];
    out[2 * j + 1] = e.phi[1];
  }
  return out;
}

MatrixC psi_jacobian(const ParamMap& map, const VectorC& x) {
  if (x.size() != map.dim()) fail(ErrorCode::DimensionMismatch, "psi: wrong input size");
  check_finite(x);
  MatrixC J(map.outputs(), map.dim());
  for (std::size_t j = 0; j < map.blocks.size(); ++j) {
    const BlockEval e = block_eval(map.blocks[j], x, true);
    if (e.relative_denominator < kChartTolerance)
      fail(ErrorCode::ChartViolation, "psi: point " + std::to_string(j + 1) + " off the chart");
    J.row(2 * j) = e.g[0].transpose();
    J.row(2 * j + 1) = e.g[1].transpose();
  }
  return J;
}

CriticalSystem::Eval CriticalSystem::evaluate(const VectorC& x, const VectorC& d,
                                              bool jacobians) const {
  const int N = map.dim();
  Eval out;
  VectorC grad = VectorC::Zero(N);
  MatrixC hess;
  if (jacobians) {
    hess = MatrixC::Zero(N, N);
    out.Fd = MatrixC::Zero(N, map.outputs());
  }
  out.min_denominator = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < map.blocks.size(); ++j) {
    const MatrixC& B = map.blocks[j];
    const BlockEval e = block_eval(B, x, true);
    out.min_denominator = std::min(out.min_denominator, e.relative_denominator);
    if (e.s == cd(0)) {
      out.F = VectorC::Constant(N, cd(std::numeric_limits<double>::infinity()));
      return out;
    }
    const VectorC b3 = B.row(2).transpose();
    for (int r = 0; r < 2; ++r) {
      const cd err = e.phi[r] - d[2 * j + r];
      grad += 2.0 * err * e.g[r];
      out.scale += 2.0 * std::abs(err) * e.g[r].norm();
      if (jacobians) {
        hess += 2.0 * (e.g[r] * e.g[r].transpose() -
                       err * (b3 * e.g[r].transpose() + e.g[r] * b3.transpose()) / e.s);
        out.Fd.col(2 * j + r).head(N - 1) = -2.0 * (T * e.g[r]);
      }
    }
  }
  out.scale *= T.norm();
  out.F.resize(N);
  out.F.head(N - 1) = T * grad;
  out.F[N - 1] = (c.transpose() * x).value() - 1.0;
  if (jacobians) {
    out.Fx.resize(N, N);
    out.Fx.topRows(N - 1) = T * hess;
    out.Fx.row(N - 1) = c.transpose();
  }
  return out;
}

double CriticalSystem::residual(const VectorC& x, const VectorC& d) const {
  const Eval e = evaluate(x, d, false);
  const int N = map.dim();
  const double grad = e.F.head(N - 1).cwiseAbs().maxCoeff() / (1.0 + e.scale);
  const double chart = std::abs(e.F[N - 1]) / (1.0 + c.norm() * x.norm());
  return std::max(grad, chart);
}

CriticalSystem build_critical_system(const ParamMap& map, const VectorC& d, std::uint64_t seed) {
  const int N = map.dim();
  if (N < 2) fail(ErrorCode::InvalidArgument, "parametrization has no blocks");
  if (d.size() != map.outputs()) fail(ErrorCode::DimensionMismatch, "data has the wrong size");
  Rng rng(seed);
  CriticalSystem sys;
  sys.map = map;
  sys.c = complex_normal_vector(rng, N);
  MatrixC T0(N - 1, N);
  for (int i = 0; i < N - 1; ++i)
    for (int k = 0; k < N; ++k) T0(i, k) = complex_normal(rng);
  const VectorC w = sys.c.conjugate() / sys.c.squaredNorm();
  sys.T = T0 - (T0 * sys.c) * w.transpose();
  sys.data = d;
  return sys;
}

SeedPair seed_solution(CriticalSystem& sys, std::uint64_t seed) {
  const int N = sys.map.dim();
  const int outputs = sys.map.outputs();
  Rng rng(seed ^ 0x5bd1e995u);
  for (int attempt = 0; attempt < 20; ++attempt) {
    VectorC x = complex_normal_vector(rng, N);
    const cd chart = (sys.c.transpose() * x).value();
    if (std::abs(chart) < 1e-3) continue;
    x /= chart;
    MatrixC J;
    try {
      J = psi_jacobian(sys.map, x);
    } catch (const Error&) {
      continue;
    }
    // Left kernel of J under the bilinear pairing: kernel of J^T.
    Eigen::JacobiSVD<MatrixC> svd(J.transpose(), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const int expected_rank = std::min(outputs, N - 1);
    if (sv[expected_rank - 1] < 1e-8 * sv[0]) continue;
    VectorC v = VectorC::Zero(outputs);
    for (int k = expected_rank; k < outputs; ++k)
      v += complex_normal(rng) * svd.matrixV().col(k);
    VectorC d = psi_eval(sys.map, x) + v;
    sys.data = d;
    return {x, d};
  }
  fail(ErrorCode::Genericity, "could not draw a regular seed point");
}

namespace {

struct Tracker {
  const CriticalSystem& sys;
  const VectorC& d_from;
  VectorC delta;
  cd gamma;

  cd tau(double s) const { return gamma * s / (1.0 + (gamma - 1.0) * s); }
  cd dtau(double s) const {
    const cd den = 1.0 + (gamma - 1.0) * s;
    return gamma / (den * den);
  }
  VectorC data(double s) const { return d_from + tau(s) * delta; }

  bool velocity(const VectorC& x, double s, VectorC& out) const {
    const auto e = sys.evaluate(x, data(s), true);
    if (!e.F.allFinite()) return false;
    Eigen::PartialPivLU<MatrixC> lu(e.Fx);
    out = -lu.solve(e.Fd * delta) * dtau(s);
    return out.allFinite();
  }
};

}  // namespace

VectorC refine(const CriticalSystem& sys, VectorC x, const VectorC& d, int iterations,
               double tol) {
  for (int it = 0; it < iterations; ++it) {
    const auto e = sys.evaluate(x, d, true);
    if (!e.F.allFinite()) break;
    const VectorC dx = Eigen::PartialPivLU<MatrixC>(e.Fx).solve(-e.F);
    if (!dx.allFinite()) break;
    x += dx;
    if (dx.norm() <= tol * (1.0 + x.norm())) break;
  }
  return x;
}

TrackResult track(const CriticalSystem& sys, const VectorC& x_start, const VectorC& d_from,
                  const VectorC& d_to, cd gamma, const TrackSettings& st) {
  Tracker tr{sys, d_from, d_to - d_from, gamma};
  TrackResult res;
  res.x = x_start;
  double s = 0.0;
  double h = st.initial_step;
  int streak = 0;
  VectorC k1, k2, k3, k4;
  while (s < 1.0) {
    if (res.steps + res.rejections >= st.max_steps) {
      res.status = PathStatus::StepLimit;
      return res;
    }
    h = std::min(h, 1.0 - s);
    const double s_next = (s + h >= 1.0) ? 1.0 : s + h;
    bool ok = tr.velocity(res.x, s, k1) && tr.velocity(res.x + 0.5 * h * k1, s + 0.5 * h, k2) &&
              tr.velocity(res.x + 0.5 * h * k2, s + 0.5 * h, k3) &&
              tr.velocity(res.x + h * k3, s_next, k4);
    VectorC x = res.x;
    if (ok) {
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const VectorC d = tr.data(s_next);
      ok = false;
      for (int it = 0; it < st.newton_iterations; ++it) {
        const auto e = sys.evaluate(x, d, true);
        if (!e.F.allFinite()) break;
        const VectorC dx = Eigen::PartialPivLU<MatrixC>(e.Fx).solve(-e.F);
        if (!dx.allFinite()) break;
        const double rel = dx.norm() / (1.0 + x.norm());
        if (it == 0 && rel > st.predictor_tolerance) break;
        x += dx;
        if (rel <= st.corrector_tolerance) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) {
      ++res.rejections;
      streak = 0;
      h *= 0.5;
      if (h < st.min_step) {
        res.status = PathStatus::StepUnderflow;
        return res;
      }
      continue;
    }
    res.x = x;
    s = s_next;
    ++res.steps;
    if (res.x.norm() > st.divergence_bound) {
      res.status = PathStatus::CorrectorDivergence;
      return res;
    }
    const auto e = sys.evaluate(res.x, tr.data(s), false);
    if (e.min_denominator < st.chart_tolerance) {
      res.status = PathStatus::ChartDegeneration;
      return res;
    }
    if (++streak >= 3) {
      h = std::min(2.0 * h, st.max_step);
      streak = 0;
    }
  }
  res.x = refine(sys, res.x, d_to);
  res.residual = sys.residual(res.x, d_to);
  return res;
}

MonodromyResult monodromy_count(const ParamMap& map, std::uint64_t rng_seed,
                                const MonodromySettings& st) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  const int N = map.dim();
  MonodromyResult out;
  out.system = build_critical_system(map, VectorC::Zero(map.outputs()), rng_seed);
  CriticalSystem& sys = out.system;

  if (map.outputs() <= N - 1) {
    // psi is dominant: every d is attained and the closest point is d.
    const SeedPair seed = seed_solution(sys, rng_seed);
    out.count = 1;
    out.transitive = true;
    out.dominant = true;
    out.solutions.push_back(seed.x);
    out.max_residual = sys.residual(seed.x);
    out.wall_time_s = elapsed();
    return out;
  }

  const SeedPair seed = seed_solution(sys, rng_seed);
  const VectorC d0 = seed.d;
  std::vector<VectorC> sols{refine(sys, seed.x, d0)};
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  auto find = [&](const VectorC& x) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < sols.size(); ++i)
      if (relative_distance(sols[i], x) < st.dedup_tolerance) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };

  Rng rng(rng_seed * 0x9e3779b97f4a7c15ULL + 1);
  int quiet = 0;
  while (quiet < st.stabilize) {
    if (out.loops >= st.max_loops || elapsed() > st.max_seconds) {
      out.partial = true;
      break;
    }
    ++out.loops;
    const double scale = st.loop_scale * (1.0 + d0.norm() / std::sqrt(static_cast<double>(d0.size())));
    VectorC d1 = d0, d2 = d0;
    for (int i = 0; i < d0.size(); ++i) {
      d1[i] += scale * complex_normal(rng);
      d2[i] += scale * complex_normal(rng);
    }
    cd gammas[3];
    for (auto& g : gammas) g = std::polar(1.0, 2.0 * M_PI * rng.uniform());

    const std::size_t known = sols.size();
    std::vector<TrackResult> ends(known);
    parallel_for(known, st.jobs, [&](std::size_t i) {
      TrackResult r = track(sys, sols[i], d0, d1, gammas[0], st.track);
      if (r.status == PathStatus::Success) r = track(sys, r.x, d1, d2, gammas[1], st.track);
      if (r.status == PathStatus::Success) r = track(sys, r.x, d2, d0, gammas[2], st.track);
      ends[i] = std::move(r);
    });
    out.paths += 3 * known;

    bool complete = true;
    bool injective = true;
    bool found_new = false;
    std::vector<std::ptrdiff_t> image(known, -1);
    std::vector<bool> hit;
    for (std::size_t i = 0; i < known; ++i) {
      const TrackResult& r = ends[i];
      if (r.status != PathStatus::Success) {
        ++out.failures[to_string(r.status)];
        complete = false;
        continue;
      }
      if (!(r.residual < st.residual_tolerance)) {
        ++out.failures["residual"];
        complete = false;
        continue;
      }
      std::ptrdiff_t k = find(r.x);
      if (k < 0) {
        sols.push_back(r.x);
        k = static_cast<std::ptrdiff_t>(sols.size() - 1);
        found_new = true;
      }
      const auto ku = static_cast<std::size_t>(k);
      hit.resize(sols.size(), false);
      if (hit[ku]) injective = false;
      hit[ku] = true;
      if (ku >= known) complete = false;
      image[i] = k;
    }
    complete = complete && injective;
    if (complete) ++out.complete_loops;
    if (injective) {
      for (std::size_t i = 0; i < known; ++i)
        if (image[i] >= 0) edges.emplace_back(i, static_cast<std::size_t>(image[i]));
    } else {
      ++out.failures["collision"];
    }
    quiet = found_new ? 0 : quiet + 1;
  }

  UnionFind uf;
  uf.parent.resize(sols.size());
  std::iota(uf.parent.begin(), uf.parent.end(), 0);
  for (const auto& [a, b] : edges) uf.unite(a, b);
  out.transitive = true;
  for (std::size_t i = 1; i < sols.size(); ++i)
    if (uf.find(i) != uf.find(0)) out.transitive = false;

  for (auto& x : sols) {
    out.max_residual = std::max(out.max_residual, sys.residual(x, d0));
  }
  std::sort(sols.begin(), sols.end(), [](const VectorC& a, const VectorC& b) {
    for (int i = 0; i < a.size(); ++i) {
      const double ar = std::round(a[i].real() * 1e6), br = std::round(b[i].real() * 1e6);
      if (ar != br) return ar < br;
      const double ai = std::round(a[i].imag() * 1e6), bi = std::round(b[i].imag() * 1e6);
      if (ai != bi) return ai < bi;
    }
    return false;
  });
  out.min_distance = sols.size() > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i < sols.size(); ++i)
    for (std::size_t k = i + 1; k < sols.size(); ++k)
      out.min_distance = std::min(out.min_distance, (sols[i] - sols[k]).norm());
  out.count = sols.size();
  out.solutions = std::move(sols);
  sys.data = d0;
  out.wall_time_s = elapsed();
  return out;
}

std::int64_t formula_resectioning(std::int64_t n) {
  if (n < 6) fail(ErrorCode::InvalidArgument, "resectioning formula needs n >= 6");
  const std::int64_t num = 80 * n * n * n - 1104 * n * n + 5068 * n - 7740;
  if (num % 3 != 0) fail(ErrorCode::Internal, "resectioning formula is not integral");
  return num / 3;
}

std::int64_t formula_multiview(std::int64_t m) {
  if (m < 2) fail(ErrorCode::InvalidArgument, "multiview formula needs m >= 2");
  const std::int64_t num = 9 * m * m * m - 21 * m * m + 16 * m - 8;
  if (num % 2 != 0) fail(ErrorCode::Internal, "multiview formula is not integral");
  return num / 2;
}

}  // namespace resect::ed
