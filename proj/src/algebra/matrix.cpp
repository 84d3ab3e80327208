#include "resect/algebra/matrix.hpp"

#include <sstream>

#include "resect/error.hpp"

namespace resect::algebra {

Vector make_vector(Field f, std::initializer_list<long long> values) {
  return make_vector(f, std::vector<long long>(values));
}

Vector make_vector(Field f, const std::vector<long long>& values) {
  Vector v;
  v.reserve(values.size());
  for (long long x : values) v.emplace_back(f, x);
  return v;
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar(f)) {}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols,
               const std::vector<long long>& row_major)
    : Matrix(f, rows, cols) {
  if (row_major.size() != rows * cols) {
    fail(ErrorCode::DimensionMismatch, "matrix initializer has wrong length");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = Scalar(f, row_major[i]);
}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<Vector>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorCode::DimensionMismatch, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (!(v.field() == field_)) fail(ErrorCode::FieldMismatch, "entry field differs from matrix");
  data_[r * cols_ + c] = v;
}

void Matrix::set(std::size_t r, std::size_t c, long long v) {
  data_[r * cols_ + c] = Scalar(field_, v);
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = (*this)(r, c);
  return t;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) const {
  Matrix s(field_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s.data_[i * cols.size() + j] = (*this)(rows[i], cols[j]);
  return s;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::DimensionMismatch, "matrix product shape");
  if (!(a.field_ == b.field_)) fail(ErrorCode::FieldMismatch, "matrix product fields");
  Matrix r(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r.data_[i * b.cols_ + j] += x * b(k, j);
    }
  return r;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) fail(ErrorCode::DimensionMismatch, "matrix-vector shape");
  Vector r(a.rows_, Scalar(a.field_));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) r[i] += a(i, k) * v[k];
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix vstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return Matrix();
  std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) fail(ErrorCode::DimensionMismatch, "vstack column mismatch");
    rows += b.rows();
  }
  Matrix m(blocks.front().field(), rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) m.set(r0 + r, c, b(r, c));
    r0 += b.rows();
  }
  return m;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

bool proportional(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) return false;
  if (is_zero(u) || is_zero(v)) return false;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (u[i] * v[j] != u[j] * v[i]) return false;
  return true;
}

bool proportional(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return proportional(flatten(a), flatten(b));
}

Vector flatten(const Matrix& m) {
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

}  // namespace resect::algebra
