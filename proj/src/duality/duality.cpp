#include "resect/duality/duality.hpp"

#include "resect/algebra/linalg.hpp"
#include "resect/error.hpp"
#include "resect/random.hpp"
#include "resect/scenes/scene_io.hpp"

namespace resect::duality {

namespace {

void require_size(const Vector& v, std::size_t n, const char* what) {
  if (v.size() != n) fail(ErrorCode::DimensionMismatch, std::string(what) + " has the wrong length");
}

bool is_coordinate_point(const Vector& v) {
  int nonzero = 0;
  for (const auto& x : v) nonzero += !x.is_zero();
  return nonzero == 1;
}

}  // namespace

ReducedCamera reduced_camera(const Vector& a) {
  require_size(a, 4, "camera parameter");
  if (algebra::is_zero(a)) fail(ErrorCode::InvalidArgument, "camera parameter is zero");
  const Field f = a.front().field();
  ReducedCamera r{Matrix(f, 3, 4), false};
  for (std::size_t k = 0; k < 3; ++k) {
    r.A.set(k, k, a[k]);
    r.A.set(k, 3, a[3]);
  }
  r.degenerate = algebra::rank(r.A) < 3;
  return r;
}

Vector cremona(const Vector& a) {
  require_size(a, 4, "Cremona input");
  int zeros = 0;
  for (const auto& x : a) zeros += x.is_zero();
  if (zeros >= 2) fail(ErrorCode::InvalidArgument, "Cremona map undefined with two zero coordinates");
  return {a[1] * a[2] * a[3], a[0] * a[2] * a[3], a[0] * a[1] * a[3], -(a[0] * a[1] * a[2])};
}

WorldPoint center(const Camera& A) {
  if (A.rows() != 3 || A.cols() != 4) fail(ErrorCode::DimensionMismatch, "camera must be 3x4");
  const auto K = algebra::kernel_basis(A);
  if (K.size() != 1) fail(ErrorCode::RankDeficient, "camera does not have rank 3");
  return K.front();
}

ReducedConfig random_reduced_config(std::size_t m, std::size_t n, std::uint64_t seed, Field f) {
  Rng rng(seed);
  ReducedConfig cfg;
  cfg.field = f;
  cfg.seed = seed;
  auto draw = [&] {
    for (;;) {
      Vector v = scenes::random_vector(f, 4, rng);
      bool ok = true;
      for (const auto& x : v) ok = ok && !x.is_zero();
      if (ok) return v;
    }
  };
  for (std::size_t i = 0; i < m; ++i) cfg.a.push_back(draw());
  for (std::size_t j = 0; j < n; ++j) cfg.q.push_back(draw());
  for (std::size_t i = 0; i < m; ++i) {
    const Camera A = reduced_camera(cfg.a[i]).A;
    std::vector<ImagePoint> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(scenes::project(A, cfg.q[j]));
    cfg.obs.push_back(std::move(row));
  }
  return cfg;
}

bool is_consistent(const ReducedConfig& cfg) {
  for (std::size_t i = 0; i < cfg.m(); ++i) {
    const Camera A = reduced_camera(cfg.a[i]).A;
    for (std::size_t j = 0; j < cfg.n(); ++j)
      if (!algebra::proportional(cfg.obs[i][j], A * cfg.q[j])) return false;
  }
  return true;
}

ReducedConfig cw_swap(const ReducedConfig& cfg) {
  ReducedConfig out;
  out.field = cfg.field;
  out.seed = cfg.seed;
  out.a = cfg.q;
  out.q = cfg.a;
  out.obs.assign(cfg.n(), std::vector<ImagePoint>(cfg.m()));
  for (std::size_t i = 0; i < cfg.m(); ++i)
    for (std::size_t j = 0; j < cfg.n(); ++j) out.obs[j][i] = cfg.obs[i][j];
  return out;
}

namespace {

// (P D)^{-1} where P has the first d points as columns and D holds the
// determinants obtained by replacing each column with the last point.
Matrix frame_map(const std::vector<Vector>& pts, std::size_t d) {
  if (pts.size() != d + 1 && pts.size() != d)
    fail(ErrorCode::InvalidArgument, "frame needs " + std::to_string(d) + " points");
  const Field f = pts.front().front().field();
  Vector unit(d, Scalar(f, 1));
  const Vector& last = pts.size() == d + 1 ? pts[d] : unit;
  for (const auto& p : pts) require_size(p, d, "frame point");
  Matrix P(f, d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) P.set(r, c, pts[c][r]);
  if (algebra::determinant(P).is_zero())
    fail(ErrorCode::DegenerateArrangement, "frame points are linearly dependent");
  Matrix PD = P;
  for (std::size_t c = 0; c < d; ++c) {
    Matrix R = P;
    for (std::size_t r = 0; r < d; ++r) R.set(r, c, last[r]);
    const Scalar rep = algebra::determinant(R);
    if (rep.is_zero()) fail(ErrorCode::DegenerateArrangement, "replacement determinant " + std::to_string(c + 1) + " vanishes");
    for (std::size_t r = 0; r < d; ++r) PD.set(r, c, P(r, c) * rep);
  }
  return algebra::inverse(PD);
}

Vector unit_vector(Field f, std::size_t d, std::size_t k) {
  Vector v(d, Scalar(f));
  v[k] = Scalar(f, 1);
  return v;
}

}  // namespace

Matrix world_frame(const std::vector<WorldPoint>& world4) {
  if (world4.size() != 4) fail(ErrorCode::InvalidArgument, "world frame needs four points");
  return frame_map(world4, 4);
}

Matrix image_frame(const std::vector<ImagePoint>& image4) {
  if (image4.size() != 4) fail(ErrorCode::InvalidArgument, "image frame needs four points");
  return frame_map(image4, 3);
}

FrameNormalization normalize_frame(const std::vector<WorldPoint>& world4,
                                   const std::vector<std::vector<ImagePoint>>& image4) {
  FrameNormalization out{world_frame(world4), {}};
  const Field f = world4.front().front().field();
  for (std::size_t k = 0; k < 4; ++k)
    if (!algebra::proportional(out.S * world4[k], unit_vector(f, 4, k)))
      fail(ErrorCode::Internal, "world frame postcondition failed");
  if (!algebra::proportional(out.S * Vector(4, Scalar(f, 1)), Vector(4, Scalar(f, 1))))
    fail(ErrorCode::Internal, "world frame does not fix E5");
  for (const auto& pts : image4) {
    Matrix T = image_frame(pts);
    for (std::size_t k = 0; k < 3; ++k)
      if (!algebra::proportional(T * pts[k], unit_vector(f, 3, k)))
        fail(ErrorCode::Internal, "image frame postcondition failed");
    if (!algebra::proportional(T * pts[3], Vector(3, Scalar(f, 1))))
      fail(ErrorCode::Internal, "image frame does not send the fourth point to (1,1,1)");
    out.T.push_back(std::move(T));
  }
  return out;
}

Matrix dual_fundamental(const WorldPoint& q1, const WorldPoint& q2) {
  require_size(q1, 4, "world point");
  require_size(q2, 4, "world point");
  // 1-based coordinates as in the usual statement of the formula.
  auto x = [&](std::size_t k) -> const Scalar& { return q1[k - 1]; };
  auto y = [&](std::size_t k) -> const Scalar& { return q2[k - 1]; };
  auto D = [&](std::size_t a, std::size_t b) { return x(a) * y(b) - x(b) * y(a); };
  Matrix F(q1.front().field(), 3, 3);
  F.set(0, 1, x(2) * y(1) * D(4, 3));
  F.set(0, 2, x(3) * y(1) * D(2, 4));
  F.set(1, 0, x(1) * y(2) * D(3, 4));
  F.set(1, 2, x(3) * y(2) * D(4, 1));
  F.set(2, 0, x(1) * y(3) * D(4, 2));
  F.set(2, 1, x(2) * y(3) * D(1, 4));
  return F;
}

std::vector<MultiPoly> reduced_two_focal_system(const std::vector<WorldPoint>& q, std::size_t m) {
  const std::size_t n = q.size();
  if (n < 2 || m < 1) fail(ErrorCode::InvalidArgument, "need m >= 1 cameras and n >= 2 points");
  for (std::size_t j = 0; j < n; ++j) {
    require_size(q[j], 4, "world point");
    if (algebra::is_zero(q[j])) fail(ErrorCode::Genericity, "point " + std::to_string(j + 1) + " is zero");
    if (is_coordinate_point(q[j]))
      fail(ErrorCode::Genericity, "point " + std::to_string(j + 1) + " equals a coordinate point E_i");
    for (std::size_t k = 0; k < j; ++k)
      if (algebra::proportional(q[j], q[k]))
        fail(ErrorCode::Genericity, "points " + std::to_string(k + 1) + " and " + std::to_string(j + 1) + " coincide");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
          if (scenes::common_nodal_cubic({q[a], q[b], q[c], q[d]}))
            fail(ErrorCode::Genericity, "points " + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
                                            std::to_string(c + 1) + "," + std::to_string(d + 1) +
                                            " lie on a common 4-nodal cubic");
  const Field f = q.front().front().field();
  const poly::Ring ring(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n));
  std::vector<MultiPoly> out;
  for (std::uint32_t i = 1; i <= m; ++i)
    for (std::uint32_t j1 = 1; j1 <= n; ++j1)
      for (std::uint32_t j2 = j1 + 1; j2 <= n; ++j2) {
        const Matrix F = dual_fundamental(q[j1 - 1], q[j2 - 1]);
        MultiPoly form(ring, f);
        for (std::uint32_t r = 1; r <= 3; ++r)
          for (std::uint32_t c = 1; c <= 3; ++c) {
            const Scalar& x = F(r - 1, c - 1);
            if (x.is_zero()) continue;
            form.add_term(poly::Monomial({{ring.var(i, j1, r), 1}, {ring.var(i, j2, c), 1}}), x);
          }
        out.push_back(std::move(form));
      }
  return out;
}

nlohmann::json to_json(const ReducedConfig& cfg) {
  using nlohmann::json;
  json cams = json::array(), pts = json::array(), obs = json::array();
  for (const auto& a : cfg.a) cams.push_back(scenes::vector_json(a));
  for (const auto& q : cfg.q) pts.push_back(scenes::vector_json(q));
  for (const auto& row : cfg.obs) {
    json r = json::array();
    for (const auto& p : row) r.push_back(scenes::vector_json(p));
    obs.push_back(std::move(r));
  }
  return {{"field", cfg.field.to_string()}, {"reduced", true}, {"points", std::move(pts)},
          {"cameras", std::move(cams)}, {"observations", std::move(obs)}, {"seed", cfg.seed},
          {"noise", nullptr}};
}

ReducedConfig reduced_config_from_json(const nlohmann::json& j) {
  try {
    if (!j.value("reduced", false)) fail(ErrorCode::Schema, "not a reduced configuration");
    ReducedConfig cfg;
    try {
      cfg.field = Field::parse(j.at("field").get<std::string>());
    } catch (const Error& e) {
      fail(ErrorCode::Schema, e.what());
    }
    for (const auto& a : j.at("cameras")) cfg.a.push_back(scenes::vector_from_json(cfg.field, a, 4));
    for (const auto& q : j.at("points")) cfg.q.push_back(scenes::vector_from_json(cfg.field, q, 4));
    const auto& obs = j.at("observations");
    if (!obs.is_array() || obs.size() != cfg.m()) fail(ErrorCode::Schema, "observations must have one row per camera");
    for (const auto& row : obs) {
      if (!row.is_array() || row.size() != cfg.n()) fail(ErrorCode::Schema, "observation row has the wrong length");
      std::vector<ImagePoint> r;
      for (const auto& p : row) r.push_back(scenes::vector_from_json(cfg.field, p, 3));
      cfg.obs.push_back(std::move(r));
    }
    cfg.seed = j.value("seed", std::uint64_t{0});
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Schema, std::string("malformed reduced configuration: ") + e.what());
  }
}

}  // namespace resect::duality
