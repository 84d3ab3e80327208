#include "doctest.h"

#include "resect/algebra/linalg.hpp"
#include "resect/error.hpp"
#include "resect/scenes/scene.hpp"
#include "resect/scenes/scene_io.hpp"

using namespace resect;
using namespace resect::scenes;

namespace {

const Field QQ = Field::rationals();
const Field FP = Field::prime();

Vector vec(std::initializer_list<long long> v) { return algebra::make_vector(QQ, v); }

}  // namespace

TEST_CASE("random arrangements are seed deterministic and generic") {
  CHECK(random_arrangement(6, 11, QQ) == random_arrangement(6, 11, QQ));
  CHECK(random_arrangement(6, 11, FP) == random_arrangement(6, 11, FP));
  CHECK_FALSE(random_arrangement(6, 11, QQ) == random_arrangement(6, 12, QQ));
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(no_four_coplanar(random_arrangement(6, seed, QQ)));
  CHECK(random_arrangement(3, 5, QQ).size() == 3);
  CHECK_THROWS_AS(random_arrangement(0, 1, QQ), Error);
}

TEST_CASE("coplanarity predicate") {
  CHECK(no_four_coplanar({vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0}), vec({0, 0, 0, 1})}));
  CHECK_FALSE(no_four_coplanar({vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0}), vec({1, 1, 1, 0})}));
  // A fifth point in the plane of three others.
  CHECK_FALSE(no_four_coplanar({vec({1, 2, 3, 4}), vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 1}),
                                vec({2, 3, 1, 1})}));
  CHECK(no_four_coplanar({vec({1, 2, 3, 4})}));
}

TEST_CASE("common nodal cubic") {
  Rng rng(3);
  // Coincident points give equal rows.
  const auto a = vec({2, 3, 5, 7});
  CHECK(common_nodal_cubic({a, a, vec({1, 4, 9, 2}), vec({3, -1, 2, 8})}));
  // Random points: nonsingular.
  int singular = 0;
  for (int t = 0; t < 20; ++t) {
    std::vector<WorldPoint> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(random_vector(QQ, 4, rng));
    singular += common_nodal_cubic(pts);
  }
  CHECK(singular == 0);
  // Points on x2x3x4 + x1x3x4 + x1x2x4 + x1x2x3 = 0, solved for x4.
  for (int t = 0; t < 20; ++t) {
    std::vector<WorldPoint> pts;
    while (pts.size() < 4) {
      const mpq_class x1 = rng.uniform_int(1, 40), x2 = rng.uniform_int(-40, 40), x3 = rng.uniform_int(1, 40);
      const mpq_class den = x1 * x2 + x1 * x3 + x2 * x3;
      if (den == 0 || x2 == 0) continue;
      const mpq_class x4 = -x1 * x2 * x3 / den;
      pts.push_back({Scalar(QQ, x1), Scalar(QQ, x2), Scalar(QQ, x3), Scalar(QQ, x4)});
    }
    CHECK(common_nodal_cubic(pts));
  }
  CHECK(common_nodal_cubic({vec({1, 1, -1, -1}), vec({1, -1, 1, -1}), vec({-1, 1, 1, -1}), vec({2, 2, -2, -2})}));
  CHECK_THROWS_AS(common_nodal_cubic({vec({1, 0, 0, 0}), a, a, a}), Error);
}

TEST_CASE("projection and synthesis") {
  Camera A(QQ, 3, 4, {2, 0, 0, 5, 0, 3, 0, 5, 0, 0, 7, 5});
  CHECK(algebra::proportional(project(A, vec({1, 0, 0, 0})), vec({1, 0, 0})));
  const auto kernel = algebra::kernel_basis(A);
  REQUIRE(kernel.size() == 1);
  try {
    project(A, kernel[0]);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CenterCoincidence);
  }

  const Scene s = random_scene(2, 7, 4, QQ);
  CHECK(s.m() == 2);
  CHECK(s.n() == 7);
  CHECK(is_consistent(s));
  CHECK_FALSE(is_consistent(perturb(s, 9)));
  CHECK(is_consistent(random_scene(1, 6, 4, FP)));
}

TEST_CASE("noise") {
  const Scene s = random_scene(1, 6, 8, QQ);
  const Scene z = add_noise(s, 0.0, 5);
  for (std::size_t j = 0; j < s.n(); ++j)
    CHECK(z.observations[0][j] == dehomogenize(s.observations[0][j]));
  CHECK(is_consistent(z));
  const Scene noisy = add_noise(s, 1e-2, 5);
  CHECK_FALSE(is_consistent(noisy));
  CHECK(noisy.noise->sigma == 1e-2);
  const Scene again = add_noise(s, 1e-2, 5);
  CHECK(again.observations == noisy.observations);
  CHECK_THROWS_AS(add_noise(random_scene(1, 6, 8, FP), 1.0, 1), Error);
}

TEST_CASE("scene JSON round trip") {
  for (Field f : {QQ, FP}) {
    const Scene s = random_scene(2, 6, 21, f);
    const Scene back = scene_from_json(nlohmann::json::parse(to_json(s).dump()));
    CHECK(back.field == s.field);
    CHECK(back.points == s.points);
    CHECK(back.cameras == s.cameras);
    CHECK(back.observations == s.observations);
    CHECK(back.seed == 21);
    CHECK_FALSE(back.noise.has_value());
  }
  const Scene noisy = add_noise(random_scene(1, 6, 2, QQ), 0.5, 3);
  const Scene back = scene_from_json(to_json(noisy));
  CHECK(back.observations == noisy.observations);
  REQUIRE(back.noise.has_value());
  CHECK(back.noise->seed == 3);

  auto j = to_json(random_scene(1, 6, 2, QQ));
  j["observations"][0].erase(0);
  try {
    scene_from_json(j);
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Schema);
  }
  j = to_json(random_scene(1, 6, 2, QQ));
  j["points"][0][1] = "1/0";
  CHECK_THROWS_AS(scene_from_json(j), Error);
}
