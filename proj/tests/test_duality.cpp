#include "doctest.h"

#include "resect/algebra/linalg.hpp"
#include "resect/duality/duality.hpp"
#include "resect/error.hpp"
#include "resect/focal/focal.hpp"

using namespace resect;
using namespace resect::duality;

namespace {

const Field QQ = Field::rationals();
const Field FP = Field::prime();

Vector vec(std::initializer_list<long long> v) { return algebra::make_vector(QQ, v); }

Vector nonzero_vector(Field f, std::size_t d, Rng& rng) {
  for (;;) {
    Vector v = scenes::random_vector(f, d, rng);
    bool ok = true;
    for (const auto& x : v) ok = ok && !x.is_zero();
    if (ok) return v;
  }
}

Scalar bilinear(const Vector& u, const Matrix& F, const Vector& v) {
  Scalar acc(F.field());
  const Vector Fv = F * v;
  for (std::size_t k = 0; k < 3; ++k) acc += u[k] * Fv[k];
  return acc;
}

// det [[A(q1), p1, 0], [A(q2), 0, p2]]
Scalar two_focal_det(const Vector& q1, const Vector& q2, const Vector& p1, const Vector& p2) {
  const Field f = q1.front().field();
  const Matrix A1 = reduced_camera(q1).A, A2 = reduced_camera(q2).A;
  Matrix M(f, 6, 6);
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

}  // namespace

TEST_CASE("reduced cameras") {
  const ReducedCamera e5 = reduced_camera(vec({1, 1, 1, 1}));
  CHECK(e5.A == Matrix(QQ, 3, 4, {1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1}));
  CHECK_FALSE(e5.degenerate);
  Rng rng(1);
  const std::vector<Vector> images = {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}), vec({1, 1, 1})};
  for (int t = 0; t < 50; ++t) {
    const Matrix A = reduced_camera(nonzero_vector(QQ, 4, rng)).A;
    for (std::size_t k = 0; k < 4; ++k) {
      Vector E(4, Scalar(QQ));
      E[k] = Scalar(QQ, 1);
      CHECK(algebra::proportional(A * E, images[k]));
    }
  }
  CHECK(reduced_camera(vec({1, 0, 0, 0})).degenerate);
  CHECK(algebra::rank(reduced_camera(vec({1, 0, 0, 0})).A) == 1);
  CHECK_THROWS_AS(reduced_camera(vec({0, 0, 0, 0})), Error);
}

TEST_CASE("Cremona involution and camera centers") {
  CHECK(cremona(vec({1, 1, 1, 1})) == vec({1, 1, 1, -1}));
  Rng rng(2);
  for (Field f : {QQ, FP})
    for (int t = 0; t < 100; ++t) {
      const Vector a = nonzero_vector(f, 4, rng);
      CHECK(algebra::proportional(cremona(cremona(a)), a));
      CHECK(algebra::proportional(center(reduced_camera(a).A), cremona(a)));
    }
  // One zero coordinate is allowed.
  CHECK(algebra::proportional(cremona(vec({0, 2, 3, 5})), vec({1, 0, 0, 0})));
  CHECK_THROWS_AS(cremona(vec({1, 1, 0, 0})), Error);
  CHECK(algebra::proportional(center(Matrix(QQ, 3, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0})), vec({0, 0, 0, 1})));
  try {
    center(Matrix(QQ, 3, 4, {1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0}));
    FAIL("expected rank deficiency");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankDeficient);
  }
}

TEST_CASE("duality flip is an exact identity") {
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    const Vector a = scenes::random_vector(QQ, 4, rng), q = scenes::random_vector(QQ, 4, rng);
    CHECK(reduced_camera(a).A * q == reduced_camera(q).A * a);
  }
}

TEST_CASE("duality swap") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ReducedConfig cfg = random_reduced_config(1 + seed % 3, 2 + seed % 5, seed, seed % 2 ? FP : QQ);
    REQUIRE(is_consistent(cfg));
    const ReducedConfig sw = cw_swap(cfg);
    CHECK(sw.m() == cfg.n());
    CHECK(sw.n() == cfg.m());
    CHECK(is_consistent(sw));
    const ReducedConfig back = cw_swap(sw);
    CHECK(back.a == cfg.a);
    CHECK(back.q == cfg.q);
    CHECK(back.obs == cfg.obs);
  }
  const ReducedConfig fig = random_reduced_config(2, 3, 7, QQ);
  const ReducedConfig sw = cw_swap(fig);
  CHECK(sw.m() == 3);
  CHECK(sw.n() == 2);
  CHECK(is_consistent(sw));
}

TEST_CASE("frame normalization") {
  const std::vector<WorldPoint> E = {vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0}), vec({0, 0, 0, 1})};
  const std::vector<ImagePoint> e = {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}), vec({1, 1, 1})};
  const FrameNormalization id = normalize_frame(E, {e, e});
  CHECK(algebra::proportional(id.S, Matrix::identity(QQ, 4)));
  CHECK(algebra::proportional(id.T[0], Matrix::identity(QQ, 3)));

  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    std::vector<WorldPoint> w;
    for (int k = 0; k < 4; ++k) w.push_back(scenes::random_vector(QQ, 4, rng));
    std::vector<ImagePoint> im;
    for (int k = 0; k < 4; ++k) im.push_back(scenes::random_vector(QQ, 3, rng));
    const FrameNormalization fr = normalize_frame(w, {im});
    for (std::size_t k = 0; k < 4; ++k) CHECK(algebra::proportional(fr.S * w[k], E[k]));
    CHECK(algebra::proportional(fr.S * vec({1, 1, 1, 1}), vec({1, 1, 1, 1})));
    for (std::size_t k = 0; k < 4; ++k) CHECK(algebra::proportional(fr.T[0] * im[k], e[k]));
  }
  const std::vector<WorldPoint> coplanar = {vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0}), vec({1, 1, 1, 0})};
  try {
    normalize_frame(coplanar, {});
    FAIL("expected a degenerate frame");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DegenerateArrangement);
  }
  // E5 on a face of the tetrahedron: a replacement determinant vanishes.
  CHECK_THROWS_AS(normalize_frame({vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0}), vec({1, 1, 1, 0}) }, {}), Error);
  CHECK_THROWS_AS(world_frame({vec({1, 1, 0, 0}), vec({0, 0, 1, 0}), vec({0, 0, 0, 1}), vec({1, 2, 0, 0})}), Error);
}

TEST_CASE("normalized cameras take the reduced form") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const scenes::Scene s = scenes::random_scene(3, 6, seed, QQ);
    const std::vector<WorldPoint> w(s.points.begin(), s.points.begin() + 4);
    std::vector<std::vector<ImagePoint>> im;
    for (const auto& row : s.observations) im.emplace_back(row.begin(), row.begin() + 4);
    const FrameNormalization fr = normalize_frame(w, im);
    const Matrix Sinv = algebra::inverse(fr.S);
    for (std::size_t i = 0; i < s.m(); ++i) {
      const Matrix R = fr.T[i] * s.cameras[i] * Sinv;
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
          if (r != c) CHECK(R(r, c).is_zero());
      CHECK(R(0, 3) == R(1, 3));
      CHECK(R(1, 3) == R(2, 3));
    }
  }
}

TEST_CASE("dual fundamental matrix") {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const Vector q1 = nonzero_vector(QQ, 4, rng), q2 = nonzero_vector(QQ, 4, rng);
    const Matrix F = dual_fundamental(q1, q2);
    for (std::size_t k = 0; k < 3; ++k) CHECK(F(k, k).is_zero());
    CHECK(algebra::determinant(F).is_zero());
    // The determinant is bilinear in (p1, p2); its coefficients are its
    // values at pairs of unit vectors.
    std::optional<Scalar> constant;
    bool proportional = true;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        Vector u(3, Scalar(QQ)), v(3, Scalar(QQ));
        u[r] = Scalar(QQ, 1);
        v[c] = Scalar(QQ, 1);
        const Scalar d = two_focal_det(q1, q2, u, v);
        if (F(r, c).is_zero()) {
          proportional = proportional && d.is_zero();
        } else {
          const Scalar ratio = d / F(r, c);
          if (!constant) constant = ratio;
          proportional = proportional && ratio == *constant;
        }
      }
    CHECK(proportional);
    REQUIRE(constant.has_value());
    CHECK(*constant == Scalar(QQ, 1));
  }
  for (int t = 0; t < 100; ++t) {
    const Vector a = nonzero_vector(QQ, 4, rng);
    const Vector q1 = nonzero_vector(QQ, 4, rng), q2 = nonzero_vector(QQ, 4, rng);
    const Matrix A = reduced_camera(a).A;
    Vector p1 = A * q1, p2 = A * q2;
    for (auto& x : p1) x *= Scalar(QQ, 3);
    const Matrix F = dual_fundamental(q1, q2);
    CHECK(bilinear(p1, F, p2).is_zero());
    CHECK(algebra::determinant(F).is_zero());
  }
}

TEST_CASE("six-focal specializes to the dual fundamental form") {
  Rng rng(6);
  for (int t = 0; t < 5; ++t) {
    const Vector q1 = nonzero_vector(QQ, 4, rng), q2 = nonzero_vector(QQ, 4, rng);
    const std::vector<WorldPoint> q = {vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0}), vec({0, 0, 0, 1}), q1, q2};
    const poly::Ring ring(1, 6);
    const focal::FocalSpec full{1, {1, 2, 3, 4, 5, 6}, std::vector<std::vector<std::uint32_t>>(6, {1, 2, 3})};
    MultiPoly f = focal::k_focal(q, full, ring);
    const std::vector<Vector> e = {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}), vec({1, 1, 1})};
    for (std::uint32_t j = 1; j <= 4; ++j)
      for (std::uint32_t c = 1; c <= 3; ++c) f = f.substitute(ring.var(1, j, c), e[j - 1][c - 1]);
    const Matrix F = dual_fundamental(q1, q2);
    MultiPoly g(ring, QQ);
    for (std::uint32_t r = 1; r <= 3; ++r)
      for (std::uint32_t c = 1; c <= 3; ++c)
        g.add_term(poly::Monomial({{ring.var(1, 5, r), 1}, {ring.var(1, 6, c), 1}}), F(r - 1, c - 1));
    REQUIRE_FALSE(f.is_zero());
    const auto ord = poly::MonomialOrder::pinned_lex(ring);
    CHECK(poly::monic(f, ord) == poly::monic(g, ord));
  }
}

TEST_CASE("reduced two-focal system") {
  Rng rng(7);
  CHECK(reduced_two_focal_system({nonzero_vector(QQ, 4, rng), nonzero_vector(QQ, 4, rng)}, 1).size() == 1);
  std::vector<WorldPoint> q;
  for (int j = 0; j < 4; ++j) q.push_back(nonzero_vector(QQ, 4, rng));
  const auto forms = reduced_two_focal_system(q, 3);
  CHECK(forms.size() == 18);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ReducedConfig cfg = random_reduced_config(2, 5, seed, QQ);
    const auto sys = reduced_two_focal_system(cfg.q, 2);
    std::vector<Scalar> vals;
    for (const auto& row : cfg.obs)
      for (const auto& p : row) vals.insert(vals.end(), p.begin(), p.end());
    for (const auto& g : sys) CHECK(g.evaluate(vals).is_zero());
  }
  auto expect_genericity = [](const std::vector<WorldPoint>& pts, const std::string& needle) {
    try {
      reduced_two_focal_system(pts, 1);
      FAIL("expected a genericity error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Genericity);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_genericity({q[0], vec({0, 0, 1, 0})}, "coordinate point");
  expect_genericity({q[0], q[1], q[0]}, "coincide");
  expect_genericity({vec({1, 1, -1, -1}), vec({1, -1, 1, -1}), vec({-1, 1, 1, -1}), vec({11, 22, 33, -6})}, "cubic");
}

TEST_CASE("reduced configuration JSON") {
  const ReducedConfig cfg = random_reduced_config(2, 3, 4, QQ);
  const auto j = to_json(cfg);
  CHECK(j["reduced"] == true);
  const ReducedConfig back = reduced_config_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.a == cfg.a);
  CHECK(back.q == cfg.q);
  CHECK(back.obs == cfg.obs);
  auto bad = j;
  bad.erase("reduced");
  CHECK_THROWS_AS(reduced_config_from_json(bad), Error);
}
