#include "resect/algebra/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "resect/error.hpp"

namespace resect::algebra {

namespace detail {

std::uint32_t det_mod_p(std::vector<std::uint32_t>& a, std::size_t n, std::uint32_t p) {
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv * n + k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      det = (p - det) % p;
    }
    const std::uint32_t pv = a[k * n + k];
    det = det * pv % p;
    const std::uint64_t inv = inverse_mod(pv, p);
    for (std::size_t i = k + 1; i < n; ++i) {
      std::uint32_t e = a[i * n + k];
      if (e == 0) continue;
      const std::uint64_t f = (p - e * inv % p) % p;
      std::uint32_t* ri = &a[i * n];
      const std::uint32_t* rk = &a[k * n];
      for (std::size_t j = k + 1; j < n; ++j) ri[j] = static_cast<std::uint32_t>((ri[j] + f * rk[j]) % p);
      ri[k] = 0;
    }
  }
  return static_cast<std::uint32_t>(det);
}

std::size_t rank_mod_p(std::vector<std::uint32_t>& a, std::size_t rows, std::size_t cols,
                       std::uint32_t p) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[r * cols + j], a[piv * cols + j]);
    const std::uint64_t inv = inverse_mod(a[r * cols + c], p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::uint32_t e = a[i * cols + c];
      if (e == 0) continue;
      const std::uint64_t f = (p - e * inv % p) % p;
      for (std::size_t j = c; j < cols; ++j)
        a[i * cols + j] = static_cast<std::uint32_t>((a[i * cols + j] + f * a[r * cols + j]) % p);
    }
    ++r;
  }
  return r;
}

mpz_class det_bareiss(std::vector<mpz_class>& a, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  mpz_class t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv * n + k] == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      sign = -sign;
    }
    const mpz_class& pk = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = a[i * n + j] * pk;
        t -= a[i * n + k] * a[k * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * n + k] = 0;
    }
    prev = pk;
  }
  mpz_class d = a[n * n - 1];
  return sign < 0 ? mpz_class(-d) : d;
}

// Fraction-free echelon form in place. With full_reduce the rows above each
// pivot are cleared too, and every pivot ends equal to the last one.
static std::vector<std::size_t> echelon_bareiss(std::vector<mpz_class>& a, std::size_t rows,
                                                std::size_t cols, bool full_reduce) {
  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  mpz_class t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[piv * cols + j]);
    const mpz_class pk = a[r * cols + c];
    for (std::size_t i = full_reduce ? 0 : r + 1; i < rows; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == c) continue;
        t = a[i * cols + j] * pk;
        t -= a[i * cols + c] * a[r * cols + j];
        mpz_divexact(a[i * cols + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = pk;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank_bareiss(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols) {
  return echelon_bareiss(a, rows, cols, false).size();
}

}  // namespace detail

namespace {

void require_square(const Matrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::NotSquare, "matrix is not square");
}

std::vector<std::uint32_t> residues(const Matrix& m) {
  std::vector<std::uint32_t> a(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r * m.cols() + c] = m(r, c).residue();
  return a;
}

// Rows scaled to integers; returns the product of the scale factors.
mpz_class integer_rows(const Matrix& m, std::vector<mpz_class>& a) {
  a.assign(m.rows() * m.cols(), mpz_class(0));
  mpz_class total = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const mpz_class& d = m(r, c).rational().get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const mpq_class& q = m(r, c).rational();
      a[r * m.cols() + c] = q.get_num() * (l / q.get_den());
    }
    total *= l;
  }
  return total;
}

// Gauss-Jordan on generic scalars; used for small inverses and Schur solves.
// Reduces [a | b] so that a becomes the identity. Returns false if singular.
bool solve_in_place(Matrix& a, Matrix& b) {
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) return false;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        Scalar x = a(c, j);
        a.set(c, j, a(piv, j));
        a.set(piv, j, x);
      }
      for (std::size_t j = 0; j < b.cols(); ++j) {
        Scalar x = b(c, j);
        b.set(c, j, b(piv, j));
        b.set(piv, j, x);
      }
    }
    const Scalar inv = a(c, c).inverse();
    for (std::size_t j = 0; j < n; ++j) a.set(c, j, a(c, j) * inv);
    for (std::size_t j = 0; j < b.cols(); ++j) b.set(c, j, b(c, j) * inv);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const Scalar f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) a.set(i, j, a(i, j) - f * a(c, j));
      for (std::size_t j = 0; j < b.cols(); ++j) b.set(i, j, b(i, j) - f * b(c, j));
    }
  }
  return true;
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s = -s;
  return s;
}

std::vector<std::size_t> pivot_first(const std::vector<std::size_t>& pivots, std::size_t n) {
  std::vector<bool> used(n, false);
  std::vector<std::size_t> order;
  for (std::size_t i : pivots) {
    if (i >= n || used[i]) fail(ErrorCode::InvalidArgument, "bad pivot index set");
    used[i] = true;
    order.push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!used[i]) order.push_back(i);
  return order;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.field().is_prime()) {
    auto a = residues(m);
    return detail::rank_mod_p(a, m.rows(), m.cols(), m.field().characteristic());
  }
  std::vector<mpz_class> a;
  integer_rows(m, a);
  return detail::rank_bareiss(a, m.rows(), m.cols());
}

std::vector<Vector> kernel_basis(const Matrix& m) {
  const Field f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Vector> basis;
  std::vector<std::size_t> pivots;
  // Entry accessor over the reduced form, as field elements.
  std::vector<Scalar> reduced;
  Scalar pivot_value(f, 1);

  if (f.is_prime()) {
    const std::uint32_t p = f.characteristic();
    auto a = residues(m);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      std::size_t piv = r;
      while (piv < rows && a[piv * cols + c] == 0) ++piv;
      if (piv == rows) continue;
      if (piv != r)
        for (std::size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[piv * cols + j]);
      const std::uint64_t inv = inverse_mod(a[r * cols + c], p);
      for (std::size_t j = 0; j < cols; ++j) a[r * cols + j] = static_cast<std::uint32_t>(a[r * cols + j] * inv % p);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || a[i * cols + c] == 0) continue;
        const std::uint64_t fac = p - a[i * cols + c];
        for (std::size_t j = 0; j < cols; ++j)
          a[i * cols + j] = static_cast<std::uint32_t>((a[i * cols + j] + fac * a[r * cols + j]) % p);
      }
      pivots.push_back(c);
      ++r;
    }
    reduced.reserve(a.size());
    for (auto x : a) reduced.emplace_back(f, static_cast<long long>(x));
  } else {
    std::vector<mpz_class> a;
    if (rows > 0) integer_rows(m, a);
    if (rows > 0) pivots = detail::echelon_bareiss(a, rows, cols, true);
    if (!pivots.empty()) pivot_value = Scalar(f, mpq_class(a[(pivots.size() - 1) * cols + pivots.back()]));
    reduced.reserve(a.size());
    for (auto& x : a) reduced.emplace_back(f, mpq_class(x));
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, Scalar(f));
    v[free] = pivot_value;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -reduced[i * cols + free];
    std::size_t last = cols;
    while (last > 0 && v[last - 1].is_zero()) --last;
    const Scalar inv = v[last - 1].inverse();
    for (auto& x : v) x *= inv;
    basis.push_back(std::move(v));
  }
  return basis;
}

Scalar determinant(const Matrix& m) {
  require_square(m);
  const Field f = m.field();
  if (f.is_prime()) {
    auto a = residues(m);
    return Scalar(f, static_cast<long long>(detail::det_mod_p(a, m.rows(), f.characteristic())));
  }
  std::vector<mpz_class> a;
  mpz_class scale = integer_rows(m, a);
  mpq_class d(detail::det_bareiss(a, m.rows()), scale);
  return Scalar(f, d);
}

Matrix inverse(const Matrix& m) {
  require_square(m);
  Matrix a = m;
  Matrix b = Matrix::identity(m.field(), m.rows());
  if (!solve_in_place(a, b)) fail(ErrorCode::SingularPivot, "matrix is singular");
  return b;
}

SchurResult schur_reduce(const Matrix& m, const std::vector<std::size_t>& pivot_rows,
                         const std::vector<std::size_t>& pivot_cols) {
  if (pivot_rows.size() != pivot_cols.size())
    fail(ErrorCode::InvalidArgument, "pivot block must be square");
  const std::size_t k = pivot_rows.size();
  const auto rorder = pivot_first(pivot_rows, m.rows());
  const auto corder = pivot_first(pivot_cols, m.cols());
  const std::vector<std::size_t> rrest(rorder.begin() + k, rorder.end());
  const std::vector<std::size_t> crest(corder.begin() + k, corder.end());

  Matrix p = m.submatrix(pivot_rows, pivot_cols);
  SchurResult out;
  out.pivot_det = determinant(p);
  if (out.pivot_det.is_zero()) fail(ErrorCode::SingularPivot, "pivot block is singular");
  out.sign = permutation_sign(rorder) * permutation_sign(corder);

  Matrix x = m.submatrix(pivot_rows, crest);  // becomes P^{-1} B
  Matrix pa = p;
  solve_in_place(pa, x);
  const Matrix c = m.submatrix(rrest, pivot_cols);
  Matrix d = m.submatrix(rrest, crest);
  const Matrix cx = c * x;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) d.set(i, j, d(i, j) - cx(i, j));
  out.complement = std::move(d);
  return out;
}

Matrix schur_reduce(const Matrix& m, std::size_t k) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  return schur_reduce(m, idx, idx).complement;
}

}  // namespace resect::algebra
