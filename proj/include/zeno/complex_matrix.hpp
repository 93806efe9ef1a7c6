#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>

#include "zeno/kernels.hpp"
#include "zeno/types.hpp"

namespace zeno {

/// Dense complex matrix, row-major. Square d x d for operators and density
/// matrices, d^2 x d^2 for superoperator matrices, d x 1 for kets. Values are
/// immutable in spirit: operations return new matrices.
class ComplexMatrix {
public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, complex(0.0, 0.0)) {}

  /// Row-major nested initializer, e.g. {{1, 0}, {0, -1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows);

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }
  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  /// Side length; valid for square matrices only.
  std::size_t dim() const;

  complex& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  complex* data() { return data_.data(); }
  const complex* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator-() const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix operator*(complex s) const;
  friend ComplexMatrix operator*(complex s, const ComplexMatrix& m) {
    return m * s;
  }
  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(complex s);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  complex trace() const;
  double frobenius_norm() const;
  /// Largest entry magnitude.
  double max_abs() const;
  /// Maximum absolute column sum (operator 1-norm).
  double one_norm() const;

  bool is_finite() const;
  bool is_hermitian(double tolerance = tol::hermiticity) const;

  /// max |a_ij - b_ij|.
  double max_abs_diff(const ComplexMatrix& o) const;

  ComplexMatrix column(std::size_t c) const;
  void set_column(std::size_t c, const ComplexMatrix& col);

private:
  std::size_t rows_, cols_;
  std::vector<complex> data_;
};

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// <a|b> = sum_i conj(a_i) b_i for column vectors.
complex inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// |a><b| for column vectors.
ComplexMatrix outer(const ComplexMatrix& a, const ComplexMatrix& b);

double vector_norm(const ComplexMatrix& v);
ComplexMatrix normalized(const ComplexMatrix& v);

/// Pauli matrices and friends (2x2).
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix sigma_minus();
ComplexMatrix sigma_plus();

}  // namespace zeno
