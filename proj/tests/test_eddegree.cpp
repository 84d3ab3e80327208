#include "doctest.h"

#include "resect/eddegree/degree68.hpp"
#include "resect/eddegree/eddegree.hpp"
#include "resect/error.hpp"
#include "resect/random.hpp"

using namespace resect;
using namespace resect::ed;

namespace {

VectorC random_point(Rng& rng, int size) {
  VectorC v(size);
  for (int i = 0; i < size; ++i) v[i] = cd(rng.normal(), rng.normal());
  return v;
}

// Central differences along each coordinate; psi is holomorphic so a real
// step gives the complex derivative.
MatrixC fd_jacobian(const ParamMap& map, const VectorC& x, double h = 1e-6) {
  MatrixC J(map.outputs(), map.dim());
  for (int k = 0; k < map.dim(); ++k) {
    VectorC a = x, b = x;
    a[k] += h;
    b[k] -= h;
    J.col(k) = (psi_eval(map, a) - psi_eval(map, b)) / (2 * h);
  }
  return J;
}

double rel_err(const MatrixC& a, const MatrixC& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

cd loss(const ParamMap& map, const VectorC& x, const VectorC& d) {
  const VectorC e = psi_eval(map, x) - d;
  return (e.transpose() * e).value();
}

}  // namespace

TEST_CASE("psi is constant on lines through the origin and matches a direct projection") {
  Rng rng(11);
  const ParamMap R = random_resectioning_map(7, 5);
  const ParamMap M = random_multiview_map(3, 5);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorC x = random_point(rng, 12);
    const cd scale(rng.normal(), rng.normal());
    CHECK(rel_err(psi_eval(R, scale * x), psi_eval(R, x)) < 1e-12);
    // Camera A with rows x[0:4], x[4:8], x[8:12] applied to the world point.
    const VectorC psi = psi_eval(R, x);
    for (int j = 0; j < 7; ++j) {
      const VectorC q = R.blocks[j].row(0).head(4).transpose();
      cd y[3];
      for (int c = 0; c < 3; ++c) y[c] = (x.segment(4 * c, 4).transpose() * q).value();
      CHECK(std::abs(psi[2 * j] - y[0] / y[2]) < 1e-10 * (1 + std::abs(psi[2 * j])));
      CHECK(std::abs(psi[2 * j + 1] - y[1] / y[2]) < 1e-10 * (1 + std::abs(psi[2 * j + 1])));
    }
    const VectorC w = random_point(rng, 4);
    CHECK(rel_err(psi_eval(M, scale * w), psi_eval(M, w)) < 1e-12);
  }
}

TEST_CASE("psi jacobian agrees with finite differences") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const ParamMap R = random_resectioning_map(6 + trial % 3, 100 + trial);
    const VectorC x = random_point(rng, 12);
    CHECK(rel_err(psi_jacobian(R, x), fd_jacobian(R, x)) < 1e-6);
    const ParamMap M = random_multiview_map(2 + trial % 3, 200 + trial);
    const VectorC w = random_point(rng, 4);
    CHECK(rel_err(psi_jacobian(M, w), fd_jacobian(M, w)) < 1e-6);
    // Euler relation: the jacobian kills x.
    CHECK((psi_jacobian(R, x) * x).norm() < 1e-9 * psi_jacobian(R, x).norm() * x.norm());
  }
}

TEST_CASE("critical system derivatives agree with finite differences") {
  Rng rng(31);
  const double h = 1e-6;
  for (const bool multiview : {false, true}) {
    for (int trial = 0; trial < 5; ++trial) {
      const ParamMap map = multiview ? random_multiview_map(3, 40 + trial) : random_resectioning_map(7, 40 + trial);
      const int N = map.dim();
      const VectorC d = random_point(rng, map.outputs());
      const CriticalSystem sys = build_critical_system(map, d, 50 + trial);
      const VectorC x = random_point(rng, N);
      const auto e = sys.evaluate(x, d);

      // Gradient of L by differences of L, pushed through T.
      VectorC grad(N);
      for (int k = 0; k < N; ++k) {
        VectorC a = x, b = x;
        a[k] += h;
        b[k] -= h;
        grad[k] = (loss(map, a, d) - loss(map, b, d)) / (2 * h);
      }
      CHECK(rel_err(e.F.head(N - 1), sys.T * grad) < 1e-6);
      CHECK(std::abs(e.F[N - 1] - ((sys.c.transpose() * x).value() - 1.0)) < 1e-12);

      MatrixC Fx(N, N), Fd(N, map.outputs());
      for (int k = 0; k < N; ++k) {
        VectorC a = x, b = x;
        a[k] += h;
        b[k] -= h;
        Fx.col(k) = (sys.evaluate(a, d, false).F - sys.evaluate(b, d, false).F) / (2 * h);
      }
      for (int k = 0; k < map.outputs(); ++k) {
        VectorC a = d, b = d;
        a[k] += h;
        b[k] -= h;
        Fd.col(k) = (sys.evaluate(x, a, false).F - sys.evaluate(x, b, false).F) / (2 * h);
      }
      CHECK(rel_err(e.Fx, Fx) < 1e-6);
      CHECK(rel_err(e.Fd, Fd) < 1e-6);
      CHECK((sys.T * sys.c).norm() < 1e-12);
    }
  }
}

TEST_CASE("psi rejects points off the chart") {
  const ParamMap M = random_multiview_map(2, 1);
  // Kernel of the third row of the first camera.
  Eigen::FullPivLU<MatrixC> lu(M.blocks[0].row(2));
  const VectorC x = lu.kernel().col(0);
  CHECK_THROWS_AS(psi_eval(M, x), Error);
  try {
    psi_eval(M, x);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ChartViolation);
  }
  VectorC bad = VectorC::Ones(4);
  bad[1] = cd(std::nan(""), 0);
  CHECK_THROWS_AS(psi_eval(M, bad), Error);
  CHECK_THROWS_AS(psi_eval(M, VectorC::Ones(3)), Error);
}

TEST_CASE("seed solutions are critical points") {
  for (int k = 0; k < 10; ++k) {
    const ParamMap map = k % 2 ? random_multiview_map(2 + k % 3, k) : random_resectioning_map(6 + k % 3, k);
    CriticalSystem sys = build_critical_system(map, VectorC::Zero(map.outputs()), 7 + k);
    const SeedPair seed = seed_solution(sys, 9 + k);
    CHECK(sys.residual(seed.x, seed.d) < 1e-12);
    // Independent check without T: J^T (psi(x) - d) = 0.
    const VectorC g = psi_jacobian(map, seed.x).transpose() * (psi_eval(map, seed.x) - seed.d);
    CHECK(g.norm() < 1e-10 * (1 + seed.d.norm()));
    CHECK(std::abs((sys.c.transpose() * seed.x).value() - 1.0) < 1e-12);
  }
}

TEST_CASE("tracking a constant path returns the start point") {
  const ParamMap map = random_resectioning_map(6, 3);
  CriticalSystem sys = build_critical_system(map, VectorC::Zero(12), 4);
  const SeedPair seed = seed_solution(sys, 5);
  const TrackResult r = track(sys, seed.x, seed.d, seed.d, cd(0.6, 0.8));
  CHECK(r.status == PathStatus::Success);
  CHECK((r.x - seed.x).norm() < 1e-10);
}

TEST_CASE("tracking there and back returns to the start and stays critical") {
  Rng rng(8);
  const ParamMap map = random_multiview_map(3, 8);
  CriticalSystem sys = build_critical_system(map, VectorC::Zero(6), 9);
  const SeedPair seed = seed_solution(sys, 10);
  VectorC d1 = seed.d + random_point(rng, 6);
  const TrackResult a = track(sys, seed.x, seed.d, d1, cd(1, 0));
  REQUIRE(a.status == PathStatus::Success);
  CHECK(a.residual < 1e-9);
  const VectorC g = psi_jacobian(map, a.x).transpose() * (psi_eval(map, a.x) - d1);
  CHECK(g.norm() < 1e-8);
  const TrackResult b = track(sys, a.x, d1, seed.d, cd(1, 0));
  REQUIRE(b.status == PathStatus::Success);
  CHECK((b.x - seed.x).norm() < 1e-8);
}

TEST_CASE("multiview monodromy counts") {
  MonodromySettings st;
  const auto two = monodromy_count(random_multiview_map(2, 1), 1, st);
  CHECK(two.count == 6);
  CHECK(two.transitive);
  CHECK_FALSE(two.partial);
  CHECK(two.max_residual < 1e-9);
  CHECK(two.min_distance > 1e-6);
  const auto three = monodromy_count(random_multiview_map(3, 2), 2, st);
  CHECK(three.count == 47);
  CHECK(three.transitive);
  CHECK(three.max_residual < 1e-9);
  for (const auto& x : three.solutions) {
    const VectorC g = psi_jacobian(three.system.map, x).transpose() *
                      (psi_eval(three.system.map, x) - three.system.data);
    CHECK(g.norm() < 1e-8);
  }
}

TEST_CASE("three-view counts hold across data seeds") {
  MonodromySettings st;
  for (std::uint64_t ds = 3; ds <= 6; ++ds) {
    CAPTURE(ds);
    const auto r = monodromy_count(random_multiview_map(3, ds), ds + 100, st);
    CHECK(r.count == 47);
    CHECK(r.transitive);
  }
}

TEST_CASE("monodromy is deterministic and independent of the thread count") {
  MonodromySettings st;
  const ParamMap map = random_multiview_map(2, 4);
  const auto a = monodromy_count(map, 6, st);
  st.jobs = 3;
  const auto b = monodromy_count(map, 6, st);
  REQUIRE(a.count == b.count);
  CHECK(a.loops == b.loops);
  for (std::size_t i = 0; i < a.count; ++i) CHECK((a.solutions[i] - b.solutions[i]).norm() == 0.0);
}

TEST_CASE("dominant parametrizations have one critical point") {
  const auto r = monodromy_count(random_resectioning_map(5, 1), 1);
  CHECK(r.dominant);
  CHECK(r.count == 1);
  const auto m = monodromy_count(random_multiview_map(1, 1), 1);
  CHECK(m.dominant);
  CHECK(m.count == 1);
}

TEST_CASE("resectioning monodromy for six points") {
  MonodromySettings st;
  const auto r = monodromy_count(random_resectioning_map(6, 1), 1, st);
  CHECK(r.count == 68);
  CHECK(r.transitive);
  CHECK(r.max_residual < 1e-9);
}

TEST_CASE("closed forms") {
  // Frozen values computed by hand from the cubic.
  const std::int64_t resect[] = {68, 360, 1036, 2256, 4180, 6968, 10780, 15776, 22116, 29960};
  for (int n = 6; n <= 15; ++n) CHECK(formula_resectioning(n) == resect[n - 6]);
  const std::int64_t multi[] = {6, 47, 148, 336, 638, 1081, 1692, 2498, 3526, 4803, 6356, 8212, 10398, 12941};
  for (int m = 2; m <= 15; ++m) CHECK(formula_multiview(m) == multi[m - 2]);
  CHECK_THROWS_AS(formula_resectioning(5), Error);
  CHECK_THROWS_AS(formula_multiview(1), Error);
}

TEST_CASE("data on the image makes the preimage a solution") {
  Rng rng(77);
  const ParamMap map = random_resectioning_map(7, 77);
  const VectorC x0 = random_point(rng, 12);
  CriticalSystem sys = build_critical_system(map, VectorC::Zero(14), 78);
  const VectorC x = x0 / (sys.c.transpose() * x0).value();
  const VectorC d = psi_eval(map, x);
  const auto e = sys.evaluate(x, d, false);
  CHECK(e.F.norm() < 1e-12);
  CHECK(e.F.size() == 12);
  CHECK(sys.T.rows() == 11);
}

TEST_CASE("a tighter corrector tolerance gives a smaller endpoint residual") {
  Rng rng(5);
  const ParamMap map = random_resectioning_map(7, 5);
  CriticalSystem sys = build_critical_system(map, VectorC::Zero(14), 6);
  const SeedPair seed = seed_solution(sys, 7);
  const VectorC d1 = seed.d + random_point(rng, 14);
  TrackSettings st;
  st.corrector_tolerance = 1e-10;
  const TrackResult r = track(sys, seed.x, seed.d, d1, std::polar(1.0, 0.4), st);
  REQUIRE(r.status == PathStatus::Success);
  CHECK(r.residual <= 1e-10);
}

TEST_CASE("critical point counts of small hypersurfaces over a prime field") {
  using poly::MultiPoly;
  const algebra::Field F = algebra::Field::prime();
  const poly::Ring ring(1, 1, 1);
  const poly::Var x = ring.var(1, 1, 1), y = ring.var(1, 1, 2), z = ring.var(1, 1, 3);
  auto V = [&](poly::Var v) { return MultiPoly::variable(ring, F, v); };
  auto C = [&](long long c) { return MultiPoly::constant(ring, algebra::Scalar(F, c)); };
  const std::vector<algebra::Scalar> d2 = {algebra::Scalar(F, 1234), algebra::Scalar(F, 9876)};
  const std::vector<algebra::Scalar> d3 = {algebra::Scalar(F, 1234), algebra::Scalar(F, 9876), algebra::Scalar(F, 555)};
  struct Case {
    MultiPoly H;
    std::vector<poly::Var> vars;
    std::uint64_t expected;
  };
  // Textbook ED degrees: a general ellipse 4, a circle 2, a parabola 3,
  // an ellipsoid with distinct axes 6.
  const std::vector<Case> cases = {
      {V(x) * V(x) + C(2) * V(y) * V(y) - C(3), {x, y}, 4},
      {V(x) * V(x) + V(y) * V(y) - C(1), {x, y}, 2},
      {V(y) - V(x) * V(x), {x, y}, 3},
      {V(x) * V(x) + C(2) * V(y) * V(y) + C(3) * V(z) * V(z) - C(1), {x, y, z}, 6},
  };
  for (const auto& c : cases) {
    const auto& d = c.vars.size() == 2 ? d2 : d3;
    for (const auto form : {CriticalFormulation::Lagrange, CriticalFormulation::MinorsQuotient}) {
      std::vector<std::size_t> q(c.vars.size());
      for (std::size_t k = 0; k < q.size(); ++k) q[k] = k;
      const auto r = critical_point_count(c.H, c.vars, d, form, q, {});
      REQUIRE(r.complete);
      REQUIRE(r.count.has_value());
      CHECK(*r.count == c.expected);
    }
  }
  // Two crossing lines xy = 0: the feet of the perpendiculars (0, b) and
  // (a, 0). The minors also vanish at the crossing with multiplicity 2
  // (the curve x(x - a) = y(y - b) meets both axes there transversally);
  // one quotient by <y, x> lowers that to 1.
  const MultiPoly lines = V(x) * V(y);
  const auto lag = critical_point_count(lines, {x, y}, d2, CriticalFormulation::Lagrange, {}, {});
  const auto raw = critical_point_count(lines, {x, y}, d2, CriticalFormulation::MinorsQuotient, {}, {});
  const auto quo = critical_point_count(lines, {x, y}, d2, CriticalFormulation::MinorsQuotient, {0, 1}, {});
  REQUIRE(lag.count.has_value());
  REQUIRE(raw.count.has_value());
  REQUIRE(quo.count.has_value());
  CHECK(*lag.count == 2);
  CHECK(*raw.count == 4);
  CHECK(*quo.count == 3);
}

TEST_CASE("degree-68 pipeline respects its budget") {
  Degree68Options opts;
  opts.budget.max_seconds = 2;
  const auto r = degree68(opts);
  CHECK(r.hypersurface_terms == 90);
  CHECK(r.critical_generators == 67);
  if (!r.complete) {
    CHECK_FALSE(r.exceeded.empty());
    CHECK(r.wall_time_s < 60);
  }
}
