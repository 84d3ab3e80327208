#include "doctest.h"

#include <numeric>

#include "resect/algebra/linalg.hpp"
#include "resect/error.hpp"
#include "resect/random.hpp"

using namespace resect;
using namespace resect::algebra;

namespace {

const Field QQ = Field::rationals();
const Field FP = Field::prime();

Matrix random_matrix(Field f, std::size_t r, std::size_t c, Rng& rng, int bound = 50) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng.uniform_int(-bound, bound));
  return m;
}

Matrix random_rational_matrix(std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(QQ, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.set(i, j, Scalar(QQ, mpq_class(rng.uniform_int(-30, 30), rng.uniform_int(1, 9))));
  return m;
}

// Cofactor expansion along the first row; independent of elimination.
Scalar cofactor_det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Scalar acc(m.field());
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rows(n - 1), cols;
    std::iota(rows.begin(), rows.end(), 1);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    Scalar term = m(0, j) * cofactor_det(m.submatrix(rows, cols));
    if (j % 2) acc -= term; else acc += term;
  }
  return acc;
}

// Stacked lifted matrix [lift(q_j) | p_j e_j] built directly from its entries.
Matrix focal_rows(const std::vector<std::vector<long long>>& q,
                  const std::vector<std::vector<Scalar>>& p) {
  const std::size_t n = q.size();
  Matrix m(QQ, 3 * n, 12 + n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t t = 0; t < 4; ++t) m.set(3 * j + c, 4 * c + t, q[j][t]);
      m.set(3 * j + c, 12 + j, p[j][c]);
    }
  return m;
}

}  // namespace

TEST_CASE("scalar arithmetic is exact in both fields") {
  Scalar a = Scalar::parse(QQ, "3/4");
  Scalar b = Scalar::parse(QQ, "-5/6");
  CHECK((a + b).to_string() == "-1/12");
  CHECK((a * b).to_string() == "-5/8");
  CHECK((a / b).to_string() == "-9/10");
  CHECK_THROWS_AS(a / Scalar(QQ), Error);

  Scalar x(FP, 32002);
  CHECK((x + Scalar(FP, 2)).residue() == 1);
  CHECK((Scalar(FP, 7) * Scalar(FP, 7).inverse()).is_one());
  CHECK(Scalar(FP, -1).residue() == 32002);
  CHECK(Scalar(FP, mpq_class(1, 2)).residue() == 16002);
  CHECK_THROWS_AS(Scalar(FP, 3) + Scalar(QQ, 3), Error);
  CHECK(Field::parse("fp:32003") == FP);
  CHECK(Field::parse("QQ") == QQ);
  CHECK_THROWS_AS(Field::prime(32004), Error);
}

TEST_CASE("rank, kernel and determinant basics") {
  CHECK(rank(Matrix::identity(QQ, 3)) == 3);
  CHECK(kernel_basis(Matrix(QQ, 2, 2)).size() == 2);
  Matrix inv(QQ, 2, 2, {1, 2, 3, 4});
  CHECK(kernel_basis(inv).empty());
  CHECK(determinant(Matrix::identity(QQ, 5)).is_one());
  CHECK(determinant(Matrix(QQ, 2, 2, {2, 0, 0, 3})) == Scalar(QQ, 6));
  CHECK_THROWS_AS(determinant(Matrix(QQ, 2, 3)), Error);

  Matrix k(QQ, 2, 3, {1, 2, 3, 2, 4, 6});
  auto ker = kernel_basis(k);
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) {
    CHECK(is_zero(k * v));
    std::size_t last = v.size();
    while (v[last - 1].is_zero()) --last;
    CHECK(v[last - 1].is_one());
  }
}

TEST_CASE("determinant agrees with cofactor expansion") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + trial % 6;
    Matrix m = trial % 2 ? random_rational_matrix(n, n, rng) : random_matrix(QQ, n, n, rng);
    CHECK(determinant(m) == cofactor_det(m));
    Matrix mp = random_matrix(FP, n, n, rng, 40000);
    CHECK(determinant(mp) == cofactor_det(mp));
  }
  // A singular matrix with a zero leading entry.
  Matrix s(QQ, 3, 3, {0, 1, 2, 0, 3, 4, 0, 5, 6});
  CHECK(determinant(s).is_zero());
  Matrix z(QQ, 3, 3, {0, 1, 2, 1, 0, 4, 2, 5, 0});
  CHECK(determinant(z) == cofactor_det(z));
}

TEST_CASE("determinant is multiplicative") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a = random_rational_matrix(4, 4, rng);
    Matrix b = random_rational_matrix(4, 4, rng);
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
  }
}

TEST_CASE("rank plus nullity equals column count") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    Field f = trial % 2 ? FP : QQ;
    std::size_t r = 1 + rng.uniform_int(0, 5), c = 1 + rng.uniform_int(0, 7);
    std::size_t inner = 1 + rng.uniform_int(0, 4);
    Matrix m = random_matrix(f, r, inner, rng) * random_matrix(f, inner, c, rng);
    auto ker = kernel_basis(m);
    CHECK(rank(m) + ker.size() == c);
    CHECK(rank(m) <= inner);
    for (const auto& v : ker) CHECK(is_zero(m * v));
    if (!ker.empty()) CHECK(rank(Matrix::from_rows(f, ker)) == ker.size());
  }
}

TEST_CASE("inverse") {
  Rng rng(3);
  Matrix a = random_rational_matrix(4, 4, rng);
  CHECK(a * inverse(a) == Matrix::identity(QQ, 4));
  CHECK_THROWS_AS(inverse(Matrix(QQ, 2, 2, {1, 2, 2, 4})), Error);
}

TEST_CASE("schur complement") {
  Matrix blockdiag(QQ, 4, 4, {2, 1, 0, 0, 1, 1, 0, 0, 0, 0, 5, 7, 0, 0, 3, 9});
  CHECK(schur_reduce(blockdiag, 2) == Matrix(QQ, 2, 2, {5, 7, 3, 9}));

  Matrix two(QQ, 2, 2, {3, 5, 7, 11});
  Matrix expect(QQ, 1, 1);
  expect.set(0, 0, Scalar(QQ, mpq_class(11)) - Scalar(QQ, mpq_class(35, 3)));
  CHECK(schur_reduce(two, 1) == expect);

  CHECK_THROWS_AS(schur_reduce(Matrix(QQ, 2, 2, {0, 1, 1, 0}), 1), Error);

  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m = random_matrix(QQ, 6, 6, rng);
    std::vector<std::size_t> rows{static_cast<std::size_t>(trial % 6), 5 - static_cast<std::size_t>(trial % 3)};
    if (rows[0] == rows[1]) rows[1] = (rows[1] + 1) % 6;
    std::vector<std::size_t> cols{static_cast<std::size_t>(trial % 4), 4 + static_cast<std::size_t>(trial % 2)};
    auto s = schur_reduce(m, rows, cols);
    CHECK(determinant(m) == Scalar(QQ, s.sign) * s.pivot_det * determinant(s.complement));
  }
}

TEST_CASE("focal matrix ranks and the 12x12 representation") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<long long>> q(6, std::vector<long long>(4));
    for (auto& v : q)
      for (auto& x : v) x = rng.uniform_int(-10000, 10000);
    Matrix cam = random_matrix(QQ, 3, 4, rng, 10000);
    std::vector<std::vector<Scalar>> p;
    for (const auto& v : q) {
      Vector qv = make_vector(QQ, v);
      p.push_back(cam * qv);
    }
    Matrix consistent = focal_rows(q, p);
    CHECK(rank(consistent) == 17);
    auto ker = kernel_basis(consistent);
    REQUIRE(ker.size() == 1);
    Vector head(ker[0].begin(), ker[0].begin() + 12);
    CHECK(proportional(head, flatten(cam)));
    CHECK(determinant(consistent).is_zero());

    p[trial % 6] = make_vector(QQ, {rng.uniform_int(-99, 99), rng.uniform_int(-99, 99), rng.uniform_int(1, 99)});
    CHECK(rank(focal_rows(q, p)) == 18);
  }

  // Pivot on the coordinate-3 rows against the point columns; compare with
  // the explicit 12x12 matrix with rows (p[3] q, 0, -p[1] q), (0, p[3] q, -p[2] q).
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<long long>> q(6, std::vector<long long>(4));
    for (auto& v : q)
      for (auto& x : v) x = rng.uniform_int(-100, 100);
    std::vector<std::vector<Scalar>> p;
    for (int j = 0; j < 6; ++j)
      p.push_back(make_vector(QQ, {rng.uniform_int(-50, 50), rng.uniform_int(-50, 50), rng.uniform_int(1, 50)}));
    Matrix m = focal_rows(q, p);
    std::vector<std::size_t> prow, pcol;
    for (std::size_t j = 0; j < 6; ++j) {
      prow.push_back(3 * j + 2);
      pcol.push_back(12 + j);
    }
    auto s = schur_reduce(m, prow, pcol);
    REQUIRE(s.complement.rows() == 12);
    Matrix twelve(QQ, 12, 12);
    Scalar prod3(QQ, 1);
    for (std::size_t j = 0; j < 6; ++j) {
      prod3 *= p[j][2];
      for (std::size_t t = 0; t < 4; ++t) {
        Scalar qt(QQ, q[j][t]);
        twelve.set(j, t, p[j][2] * qt);
        twelve.set(j, 8 + t, -p[j][0] * qt);
        twelve.set(6 + j, 4 + t, p[j][2] * qt);
        twelve.set(6 + j, 8 + t, -p[j][1] * qt);
      }
    }
    Scalar lhs = determinant(m);
    Scalar rhs = determinant(twelve) / prod3;
    CHECK((lhs == rhs || lhs == -rhs));
    CHECK(!lhs.is_zero());
    CHECK(lhs == Scalar(QQ, s.sign) * s.pivot_det * determinant(s.complement));
  }
}
