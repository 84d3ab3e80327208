// Acceptance checks. Prints one line per criterion:
//   criterion <k>: PASS|FAIL|BUDGET_EXCEEDED  <details>
// Exit status is 0 when no selected criterion failed.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "resect/algebra/linalg.hpp"
#include "resect/duality/duality.hpp"
#include "resect/eddegree/degree68.hpp"
#include "resect/eddegree/eddegree.hpp"
#include "resect/error.hpp"
#include "resect/focal/focal.hpp"
#include "resect/poly/groebner.hpp"
#include "resect/random.hpp"
#include "resect/scenes/scene.hpp"

using namespace resect;
using algebra::Field;
using algebra::Matrix;
using algebra::Scalar;
using algebra::Vector;

namespace {

enum class Status { Pass, Fail, BudgetExceeded };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

struct Options {
  unsigned jobs = 1;
  double degree68_seconds = 1800;
  std::string degree68_formulation = "quotient";
};

const Field QQ = Field::rationals();
const Field FP = Field::prime(32003);

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Vector vec(Field f, std::initializer_list<long long> v) { return algebra::make_vector(f, v); }

Vector nonzero_vector(Field f, std::size_t d, Rng& rng) {
  for (;;) {
    Vector v = scenes::random_vector(f, d, rng);
    bool ok = true;
    for (const auto& x : v) ok = ok && !x.is_zero();
    if (ok) return v;
  }
}

// 1. Six-point focal support, coordinate change, leading monomials.
Outcome hypersurface(const Options&) {
  const poly::Ring ring(1, 6);
  const std::string in = "p1,1[1]*p1,2[1]*p1,3[2]*p1,4[2]*p1,5[3]*p1,6[3]";
  const std::string gin = "p1,1[1]*p1,2[1]*p1,3[1]*p1,4[1]*p1,5[1]*p1,6[1]";
  int good = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto q = scenes::random_arrangement(6, 1000 + seed, QQ);
    const auto sys = focal::generators(q, 1);
    const auto id = focal::gin_leading(q, seed, true);
    const auto ch = focal::gin_leading(q, 5000 + seed);
    const bool ok = sys.entries.size() == 1 && sys.entries[0].poly.size() == 90 && id.support == 90 &&
                    id.leading.to_string(ring) == in && ch.support == 729 &&
                    ch.leading.to_string(ring) == gin;
    good += ok;
  }
  return {good == 20 ? Status::Pass : Status::Fail,
          fmt("%d/20 arrangements with support 90 -> 729 and the expected leading monomials", good)};
}

// 2. Vanishing on exact scenes; rank and evaluation membership agree.
Outcome vanishing(const Options& o) {
  int vanish = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 6 + t % 5, m = 1 + (t / 5) % 2;
    // Polynomials are expanded while that is cheap; larger sets are checked
    // through the same minors over F_p.
    if (n <= 7) {
      const auto s = scenes::random_scene(m, n, 200 + t, QQ);
      const auto sys = focal::generators(s.points, m, {o.jobs, 20000});
      std::vector<Scalar> vals;
      for (const auto& row : s.observations)
        for (const auto& p : row) vals.insert(vals.end(), p.begin(), p.end());
      bool all = !sys.entries.empty();
      for (const auto& e : sys.entries) all = all && e.poly.evaluate(vals).is_zero();
      vanish += all;
    } else {
      const auto s = scenes::random_scene(m, n, 200 + t, FP);
      vanish += focal::evaluation_membership(s.points, s.observations, o.jobs);
    }
  }
  int agree = 0, consistent_true = 0, perturbed_false = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 6 + t % 3, m = 1 + t % 2;
    const Field f = n <= 7 ? QQ : FP;
    const auto s = scenes::random_scene(m, n, 400 + t, f);
    const auto bad = scenes::perturb(s, 900 + t);
    const bool r1 = focal::membership(s.points, s.observations);
    const bool e1 = focal::evaluation_membership(s.points, s.observations, o.jobs);
    const bool r2 = focal::membership(bad.points, bad.observations);
    const bool e2 = focal::evaluation_membership(bad.points, bad.observations, o.jobs);
    agree += (r1 == e1) + (r2 == e2);
    consistent_true += r1;
    perturbed_false += !r2;
  }
  int five = 0;
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    const auto q = scenes::random_arrangement(5, 700 + t, QQ);
    std::vector<std::vector<scenes::ImagePoint>> obs(1);
    for (int j = 0; j < 5; ++j) obs[0].push_back(scenes::random_vector(QQ, 3, rng));
    five += focal::membership(q, obs);
  }
  const bool ok = vanish == 50 && agree == 200 && consistent_true == 100 && perturbed_false == 100 && five == 20;
  return {ok ? Status::Pass : Status::Fail,
          fmt("vanish %d/50, agree %d/200 (consistent %d/100, perturbed rejected %d/100), n=5 %d/20", vanish,
              agree, consistent_true, perturbed_false, five)};
}

// 3. DLT recovers the camera up to scale with zero tolerance.
Outcome dlt(const Options&) {
  int good = 0;
  for (int t = 0; t < 100; ++t) {
    const auto s = scenes::random_scene(1, 6 + t % 6, 3000 + t, QQ);
    const auto r = focal::resect_dlt(s.points, s.observations[0]);
    good += algebra::proportional(r.camera, s.cameras[0]);
  }
  return {good == 100 ? Status::Pass : Status::Fail, fmt("%d/100 cameras recovered exactly", good)};
}

// 4. Sampled S-pairs of the seven-point generators reduce to zero.
Outcome spairs(const Options& o) {
  const auto q = scenes::random_arrangement(7, 11, FP);
  const auto sys = focal::generators(q, 1, {o.jobs, 20000});
  const auto polys = focal::polynomials(sys);
  std::string detail = fmt("%zu generators;", polys.size());
  bool ok = true;
  for (const char* name : {"lex", "grevlex"}) {
    const auto ord = poly::MonomialOrder::by_name(name, sys.ring);
    const auto s = poly::sample_spairs(polys, ord, 200, 12);
    ok = ok && s.checked >= 200 && s.reduced_to_zero == s.checked;
    detail += fmt(" %s %zu/%zu", name, s.reduced_to_zero, s.checked);
  }
  return {ok ? Status::Pass : Status::Fail, detail + " reduce to zero"};
}

// 5. Duality identities.
Outcome duality_identities(const Options&) {
  using namespace duality;
  Rng rng(5);
  int flip = 0;
  for (int t = 0; t < 1000; ++t) {
    const Vector a = scenes::random_vector(QQ, 4, rng), q = scenes::random_vector(QQ, 4, rng);
    flip += reduced_camera(a).A * q == reduced_camera(q).A * a;
  }
  int centers = 0;
  for (int t = 0; t < 100; ++t) {
    const Vector a = nonzero_vector(QQ, 4, rng);
    centers += algebra::proportional(center(reduced_camera(a).A), cremona(a)) &&
               algebra::proportional(cremona(cremona(a)), a);
  }
  int swaps = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto cfg = random_reduced_config(1 + seed % 3, 2 + seed % 5, seed, QQ);
    const auto sw = cw_swap(cfg);
    const auto back = cw_swap(sw);
    swaps += is_consistent(cfg) && is_consistent(sw) && back.a == cfg.a && back.q == cfg.q && back.obs == cfg.obs;
  }
  int frames = 0;
  const std::vector<Vector> E = {vec(QQ, {1, 0, 0, 0}), vec(QQ, {0, 1, 0, 0}), vec(QQ, {0, 0, 1, 0}),
                                 vec(QQ, {0, 0, 0, 1})};
  const std::vector<Vector> e = {vec(QQ, {1, 0, 0}), vec(QQ, {0, 1, 0}), vec(QQ, {0, 0, 1}), vec(QQ, {1, 1, 1})};
  for (int t = 0; t < 100; ++t) {
    std::vector<Vector> w, im;
    for (int k = 0; k < 4; ++k) w.push_back(scenes::random_vector(QQ, 4, rng));
    for (int k = 0; k < 4; ++k) im.push_back(scenes::random_vector(QQ, 3, rng));
    const auto fr = normalize_frame(w, {im});
    bool ok = algebra::proportional(fr.S * vec(QQ, {1, 1, 1, 1}), vec(QQ, {1, 1, 1, 1}));
    for (std::size_t k = 0; k < 4; ++k)
      ok = ok && algebra::proportional(fr.S * w[k], E[k]) && algebra::proportional(fr.T[0] * im[k], e[k]);
    frames += ok;
  }
  const bool ok = flip == 1000 && centers == 100 && swaps == 100 && frames == 100;
  return {ok ? Status::Pass : Status::Fail,
          fmt("flip %d/1000, centers %d/100, swaps %d/100, frames %d/100", flip, centers, swaps, frames)};
}

// det [[A(q1), p1, 0], [A(q2), 0, p2]]
Scalar two_focal_det(const Vector& q1, const Vector& q2, const Vector& p1, const Vector& p2) {
  const Matrix A1 = duality::reduced_camera(q1).A, A2 = duality::reduced_camera(q2).A;
  Matrix M(QQ, 6, 6);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      M.set(r, c, A1(r, c));
      M.set(3 + r, c, A2(r, c));
    }
    M.set(r, 4, p1[r]);
    M.set(3 + r, 5, p2[r]);
  }
  return algebra::determinant(M);
}

// 6. Dual fundamental matrix.
Outcome dual_f(const Options&) {
  Rng rng(6);
  int prop = 0;
  std::optional<Scalar> global;
  bool one_constant = true;
  for (int t = 0; t < 50; ++t) {
    const Vector q1 = nonzero_vector(QQ, 4, rng), q2 = nonzero_vector(QQ, 4, rng);
    const Matrix F = duality::dual_fundamental(q1, q2);
    bool ok = true;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        Vector u(3, Scalar(QQ)), v(3, Scalar(QQ));
        u[r] = Scalar(QQ, 1);
        v[c] = Scalar(QQ, 1);
        const Scalar d = two_focal_det(q1, q2, u, v);
        if (F(r, c).is_zero()) {
          ok = ok && d.is_zero();
          continue;
        }
        const Scalar ratio = d / F(r, c);
        if (!global) global = ratio;
        one_constant = one_constant && ratio == *global;
      }
    prop += ok;
  }
  int vanish = 0, det = 0;
  for (int t = 0; t < 100; ++t) {
    const Vector a = nonzero_vector(QQ, 4, rng);
    const Vector q1 = nonzero_vector(QQ, 4, rng), q2 = nonzero_vector(QQ, 4, rng);
    const Matrix A = duality::reduced_camera(a).A;
    const Vector p1 = A * q1, p2 = A * q2;
    const Matrix F = duality::dual_fundamental(q1, q2);
    const Vector Fp2 = F * p2;
    Scalar acc(QQ);
    for (std::size_t k = 0; k < 3; ++k) acc += p1[k] * Fp2[k];
    vanish += acc.is_zero();
    det += algebra::determinant(F).is_zero();
  }
  const bool ok = prop == 50 && one_constant && global && vanish == 100 && det == 100;
  return {ok ? Status::Pass : Status::Fail,
          fmt("proportional %d/50 with one constant %s, vanishing %d/100, det zero %d/100", prop,
              global ? global->to_string().c_str() : "?", vanish, det)};
}

// 7. Monodromy counts.
Outcome monodromy(const Options& o) {
  ed::MonodromySettings st;
  st.jobs = o.jobs;
  bool ok = true;
  std::string detail;
  auto run = [&](bool resect, int size, std::uint64_t data_seed, std::uint64_t rng_seed, std::size_t expect,
                 double limit, bool need_transitive) {
    const auto map = resect ? ed::random_resectioning_map(size, data_seed) : ed::random_multiview_map(size, data_seed);
    const auto r = ed::monodromy_count(map, rng_seed, st);
    const bool good = r.count == expect && !r.partial && r.wall_time_s < limit && (!need_transitive || r.transitive);
    ok = ok && good;
    detail += fmt(" %s%d[%llu/%llu]=%zu%s(%.0fs)", resect ? "n" : "m", size, (unsigned long long)data_seed,
                  (unsigned long long)rng_seed, r.count, r.transitive ? "T" : "", r.wall_time_s);
  };
  for (std::uint64_t d = 1; d <= 3; ++d)
    for (std::uint64_t s = 1; s <= 2; ++s) run(true, 6, d, 10 * d + s, 68, 300, true);
  run(false, 2, 1, 1, 6, 120, false);
  run(false, 3, 1, 1, 47, 120, false);
  run(true, 7, 1, 1, 360, 2700, false);
  return {ok ? Status::Pass : Status::Fail, "counts" + detail};
}

// 8. Closed forms against tabulated values.
Outcome formulas(const Options&) {
  const std::int64_t resect[] = {68, 360, 1036, 2256, 4180, 6968, 10780, 15776, 22116, 29960};
  const std::int64_t multi[] = {6, 47, 148, 336, 638, 1081, 1692, 2498, 3526, 4803, 6356, 8212, 10398, 12941};
  int good = 0;
  for (int n = 6; n <= 15; ++n) good += ed::formula_resectioning(n) == resect[n - 6];
  for (int m = 2; m <= 15; ++m) good += ed::formula_multiview(m) == multi[m - 2];
  return {good == 24 ? Status::Pass : Status::Fail, fmt("%d/24 table entries", good)};
}

// 9. Finite-field Groebner computation of the six-point ED degree.
Outcome degree68(const Options& o) {
  ed::Degree68Options opts;
  opts.seed = 3;
  opts.formulation = o.degree68_formulation == "lagrange" ? ed::CriticalFormulation::Lagrange
                                                          : ed::CriticalFormulation::MinorsQuotient;
  opts.budget.max_seconds = o.degree68_seconds;
  const auto r = ed::degree68(opts);
  if (!r.complete)
    return {Status::BudgetExceeded, fmt("%s stage ran out of %s after %.0fs (%s, %zu pairs)", r.stage.c_str(),
                                        r.exceeded.c_str(), r.wall_time_s, ed::to_string(opts.formulation),
                                        r.pairs_processed)};
  const bool ok = r.count && *r.count == 68;
  return {ok ? Status::Pass : Status::Fail,
          fmt("standard monomials %lld (%s, %zu basis elements, %.0fs)", r.count ? (long long)*r.count : -1LL,
              ed::to_string(opts.formulation), r.basis_size, r.wall_time_s)};
}

ed::MatrixC fd_jacobian(const ed::ParamMap& map, const ed::VectorC& x) {
  const double h = 1e-6;
  ed::MatrixC J(map.outputs(), map.dim());
  for (int k = 0; k < map.dim(); ++k) {
    ed::VectorC a = x, b = x;
    a[k] += h;
    b[k] -= h;
    J.col(k) = (ed::psi_eval(map, a) - ed::psi_eval(map, b)) / (2 * h);
  }
  return J;
}

// 10. Jacobian against differences; residuals of accepted solutions.
Outcome hygiene(const Options& o) {
  Rng rng(10);
  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    for (const bool resect : {true, false}) {
      const auto map = resect ? ed::random_resectioning_map(6 + t % 3, 50 + t) : ed::random_multiview_map(2 + t % 3, 50 + t);
      ed::VectorC x(map.dim());
      for (int k = 0; k < map.dim(); ++k) x[k] = {rng.normal(), rng.normal()};
      const auto J = ed::psi_jacobian(map, x);
      worst = std::max(worst, (J - fd_jacobian(map, x)).norm() / std::max(1.0, J.norm()));
    }
  }
  ed::MonodromySettings st;
  st.jobs = o.jobs;
  double residual = 0;
  std::size_t solutions = 0;
  for (const bool resect : {true, false}) {
    const auto map = resect ? ed::random_resectioning_map(6, 2) : ed::random_multiview_map(3, 2);
    const auto r = ed::monodromy_count(map, 3, st);
    for (const auto& x : r.solutions) residual = std::max(residual, r.system.residual(x));
    solutions += r.count;
  }
  const bool ok = worst < 1e-6 && residual < 1e-9;
  return {ok ? Status::Pass : Status::Fail,
          fmt("jacobian relative error %.2e, max residual %.2e over %zu solutions", worst, residual, solutions)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> selected;
  Options o;
  o.jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("-c,--criterion", selected, "Criteria to run (default all)")->check(CLI::Range(1, 10));
  app.add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
  app.add_option("--degree68-seconds", o.degree68_seconds, "Budget for criterion 9")->capture_default_str();
  app.add_option("--degree68-formulation", o.degree68_formulation, "quotient or lagrange")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  if (selected.empty())
    for (int k = 1; k <= 10; ++k) selected.push_back(k);

  struct Criterion {
    std::function<Outcome(const Options&)> run;
    double limit;
  };
  const Criterion table[] = {{hypersurface, 60},     {vanishing, 300}, {dlt, 120}, {spairs, 600},
                             {duality_identities, 60}, {dual_f, 60},    {monodromy, 0}, {formulas, 0},
                             {degree68, 0},            {hygiene, 0}};
  bool failed = false;
  for (int k : selected) {
    const Criterion& c = table[k - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run(o);
    } catch (const std::exception& e) {
      out = {Status::Fail, std::string("error: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    if (c.limit > 0 && secs > c.limit && out.status == Status::Pass) {
      out.status = Status::Fail;
      out.detail += fmt("; over the %.0fs limit", c.limit);
    }
    const char* tag = out.status == Status::Pass ? "PASS" : out.status == Status::Fail ? "FAIL" : "BUDGET_EXCEEDED";
    std::printf("criterion %d: %s  %s (%.1fs)\n", k, tag, out.detail.c_str(), secs);
    std::fflush(stdout);
    failed = failed || out.status == Status::Fail;
  }
  return failed ? 1 : 0;
}
