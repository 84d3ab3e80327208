#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace resect::ed {

using cd = std::complex<double>;
using VectorC = Eigen::VectorXcd;
using MatrixC = Eigen::MatrixXcd;

enum class MapKind { Resectioning, Multiview };

const char* to_string(MapKind kind);

// psi(x) = (B_j x)[1:2] / (B_j x)[3] over all blocks j. For resectioning the
// blocks are the lifts of fixed world points and x = vec(A^T) (N = 12); for
// multiview they are fixed cameras and x is the world point (N = 4).
struct ParamMap {
  MapKind kind = MapKind::Resectioning;
  std::vector<MatrixC> blocks;  // each 3 x N

  int dim() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().cols()); }
  int outputs() const { return 2 * static_cast<int>(blocks.size()); }
};

ParamMap resectioning_map(const std::vector<VectorC>& points);
ParamMap multiview_map(const std::vector<MatrixC>& cameras);
// Real data drawn from a seeded normal distribution.
ParamMap random_resectioning_map(int n, std::uint64_t data_seed);
ParamMap random_multiview_map(int m, std::uint64_t data_seed);

inline constexpr double kChartTolerance = 1e-10;

/// Throws ChartViolation if some |(B_j x)[3]| < kChartTolerance |B_j[3,:]| |x|,
/// InvalidArgument on non-finite input.
VectorC psi_eval(const ParamMap& map, const VectorC& x);
MatrixC psi_jacobian(const ParamMap& map, const VectorC& x);

/// T grad L(x; d) = 0 and c.x = 1, with L = sum (psi(x) - d)^2 and T an
/// (N-1) x N matrix whose kernel is spanned by c. Since grad L . x = 0
/// identically, T grad L = 0 on the chart forces grad L = 0.
struct CriticalSystem {
  ParamMap map;
  MatrixC T;
  VectorC c;
  VectorC data;

  struct Eval {
    VectorC F;   // N equations
    MatrixC Fx;  // N x N
    MatrixC Fd;  // N x outputs
    double min_denominator = 0.0;  // smallest relative |(B_j x)[3]|
    double scale = 0.0;            // |T| times the sum of |2 e_r| |grad phi_r|
  };

  /// jacobians=false skips Fx and Fd.
  Eval evaluate(const VectorC& x, const VectorC& d, bool jacobians = true) const;
  /// Max-norm of F, each block divided by 1 + the size of its summands.
  double residual(const VectorC& x, const VectorC& d) const;
  double residual(const VectorC& x) const { return residual(x, data); }
};

CriticalSystem build_critical_system(const ParamMap& map, const VectorC& d, std::uint64_t seed);

struct SeedPair {
  VectorC x;
  VectorC d;
};

/// x on the chart and d = psi(x) + v with v in the left kernel of the
/// Jacobian, so x is critical for d. Resamples when the left kernel is
/// numerically deficient. sys.data is set to d.
SeedPair seed_solution(CriticalSystem& sys, std::uint64_t seed);

enum class PathStatus { Success, StepUnderflow, CorrectorDivergence, ChartDegeneration, StepLimit };

const char* to_string(PathStatus s);

struct TrackSettings {
  double initial_step = 0.02;
  double min_step = 1e-9;
  double max_step = 0.1;
  int newton_iterations = 3;
  // Newton update size, relative to 1 + |x|, accepted by the corrector.
  double corrector_tolerance = 1e-9;
  // The first Newton update may not exceed this (relative), else the step is retried.
  double predictor_tolerance = 1e-3;
  double divergence_bound = 1e8;
  double chart_tolerance = kChartTolerance;
  int max_steps = 100000;
};

struct TrackResult {
  PathStatus status = PathStatus::Success;
  VectorC x;
  int steps = 0;
  int rejections = 0;
  double residual = 0.0;
};

/// Follows x from d_from to d_to along d_from + tau(s) (d_to - d_from),
/// tau(s) = gamma s / (1 + (gamma - 1) s), s in [0, 1], using an adaptive
/// fourth-order predictor and a Newton corrector.
TrackResult track(const CriticalSystem& sys, const VectorC& x_start, const VectorC& d_from,
                  const VectorC& d_to, cd gamma, const TrackSettings& settings = {});

/// Newton iterations at fixed data until the update is below tol.
VectorC refine(const CriticalSystem& sys, VectorC x, const VectorC& d, int iterations = 8,
               double tol = 1e-14);

struct MonodromySettings {
  int stabilize = 10;
  int max_loops = 300;
  double dedup_tolerance = 1e-6;
  double residual_tolerance = 1e-9;
  // Loop vertices are d0 + loop_scale * (1 + rms|d0|) * complex normal.
  double loop_scale = 10.0;
  double max_seconds = std::numeric_limits<double>::infinity();
  unsigned jobs = 1;
  TrackSettings track;
};

struct MonodromyResult {
  std::size_t count = 0;
  // Orbits are joined along every tracked loop whose endpoints are pairwise
  // distinct; transitive when they form a single orbit.
  bool transitive = false;
  bool dominant = false;  // psi is dominant; the unique critical point is d itself
  bool partial = false;   // stopped by max_loops or max_seconds
  int loops = 0;
  int complete_loops = 0;  // loops whose endpoints permute the known solutions
  std::size_t paths = 0;
  std::map<std::string, std::size_t> failures;
  double max_residual = 0.0;
  double min_distance = 0.0;  // smallest pairwise distance between solutions
  double wall_time_s = 0.0;
  std::vector<VectorC> solutions;  // canonical order
  CriticalSystem system;           // base system the solutions solve
};

MonodromyResult monodromy_count(const ParamMap& map, std::uint64_t rng_seed,
                                const MonodromySettings& settings = {});

/// (80 n^3 - 1104 n^2 + 5068 n - 7740) / 3 for n >= 6.
std::int64_t formula_resectioning(std::int64_t n);
/// (9 m^3 - 21 m^2 + 16 m - 8) / 2 for m >= 2.
std::int64_t formula_multiview(std::int64_t m);

}  // namespace resect::ed
