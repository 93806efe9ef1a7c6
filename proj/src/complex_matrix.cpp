#include "zeno/complex_matrix.hpp"

#include <algorithm>

namespace zeno {

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_)
      throw ValidationError("ragged initializer for ComplexMatrix");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::size_t ComplexMatrix::dim() const {
  if (!is_square()) throw ValidationError("dim() called on non-square matrix");
  return rows_;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw ValidationError("matrix shape mismatch in +");
  ComplexMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] = data_[i] + o.data_[i];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw ValidationError("matrix shape mismatch in -");
  ComplexMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] = data_[i] - o.data_[i];
  return r;
}

ComplexMatrix ComplexMatrix::operator-() const {
  ComplexMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  if (cols_ != o.rows_) throw ValidationError("matrix shape mismatch in *");
  ComplexMatrix r(rows_, o.cols_);
  if (o.cols_ == 1)
    kernels::matvec(data(), o.data(), r.data(), rows_, cols_);
  else
    kernels::matmul(data(), o.data(), r.data(), rows_, cols_, o.cols_);
  return r;
}

ComplexMatrix ComplexMatrix::operator*(complex s) const {
  ComplexMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
  return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw ValidationError("matrix shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw ValidationError("matrix shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] = std::conj(data_[i]);
  return r;
}

complex ComplexMatrix::trace() const {
  complex t(0.0, 0.0);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double ComplexMatrix::one_norm() const {
  double m = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    m = std::max(m, s);
  }
  return m;
}

bool ComplexMatrix::is_finite() const {
  for (const auto& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

bool ComplexMatrix::is_hermitian(double tolerance) const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tolerance)
        return false;
  return true;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw ValidationError("matrix shape mismatch in max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    m = std::max(m, std::abs(data_[i] - o.data_[i]));
  return m;
}

ComplexMatrix ComplexMatrix::column(std::size_t c) const {
  ComplexMatrix r(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, c);
  return r;
}

void ComplexMatrix::set_column(std::size_t c, const ComplexMatrix& col) {
  if (col.rows() != rows_ || col.cols() != 1)
    throw ValidationError("set_column shape mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = col(i, 0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const complex aij = a(i, j);
      if (aij == complex(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

complex inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != 1 || b.cols() != 1 || a.rows() != b.rows())
    throw ValidationError("inner() expects column vectors of equal length");
  complex s(0.0, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    s += std::conj(a(i, 0)) * b(i, 0);
  return s;
}

ComplexMatrix outer(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != 1 || b.cols() != 1)
    throw ValidationError("outer() expects column vectors");
  ComplexMatrix r(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j)
      r(i, j) = a(i, 0) * std::conj(b(j, 0));
  return r;
}

double vector_norm(const ComplexMatrix& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.rows(); ++i) s += std::norm(v(i, 0));
  return std::sqrt(s);
}

ComplexMatrix normalized(const ComplexMatrix& v) {
  const double n = vector_norm(v);
  if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
  return v * complex(1.0 / n, 0.0);
}

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() {
  return {{0.0, complex(0, -1)}, {complex(0, 1), 0.0}};
}
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix sigma_minus() { return {{0.0, 1.0}, {0.0, 0.0}}; }
ComplexMatrix sigma_plus() { return {{0.0, 0.0}, {1.0, 0.0}}; }

}  // namespace zeno
