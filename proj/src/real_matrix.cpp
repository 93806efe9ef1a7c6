#include "zeno/real_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zeno {

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::size_t RealMatrix::dim() const {
  if (rows_ != cols_) throw ValidationError("RealMatrix::dim on non-square");
  return rows_;
}

RealMatrix RealMatrix::operator+(const RealMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw ValidationError("RealMatrix shape mismatch in +");
  RealMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] = data_[i] + o.data_[i];
  return r;
}

RealMatrix RealMatrix::operator*(double s) const {
  RealMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
  return r;
}

std::vector<double> RealMatrix::operator*(const std::vector<double>& v) const {
  if (v.size() != cols_)
    throw ValidationError("RealMatrix * vector shape mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * v[j];
  return y;
}

double RealMatrix::row_sum(std::size_t r) const {
  double s = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) s += (*this)(r, j);
  return s;
}

double RealMatrix::col_sum(std::size_t c) const {
  double s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, c);
  return s;
}

double RealMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double RealMatrix::max_abs_diff(const RealMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw ValidationError("RealMatrix shape mismatch in max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    m = std::max(m, std::abs(data_[i] - o.data_[i]));
  return m;
}

ComplexMatrix RealMatrix::to_complex() const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

RealMatrix RealMatrix::from_complex(const ComplexMatrix& m, double imag_tol) {
  double imax = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      imax = std::max(imax, std::abs(m(i, j).imag()));
  if (imax > imag_tol) {
    std::ostringstream msg;
    msg << "from_complex: imaginary residue " << imax;
    throw NumericalError(msg.str());
  }
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).real();
  return r;
}

}  // namespace zeno
