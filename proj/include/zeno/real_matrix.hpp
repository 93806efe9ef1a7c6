#pragma once

#include <cstddef>
#include <vector>

#include "zeno/complex_matrix.hpp"
#include "zeno/types.hpp"

namespace zeno {

/// Small dense real matrix, row-major. Holds overlap and rate matrices.
class RealMatrix {
public:
  RealMatrix() : rows_(0), cols_(0) {}
  RealMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static RealMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const;

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const double& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  RealMatrix operator+(const RealMatrix& o) const;
  RealMatrix operator*(double s) const;
  std::vector<double> operator*(const std::vector<double>& v) const;

  double row_sum(std::size_t r) const;
  double col_sum(std::size_t c) const;
  double max_abs() const;
  double max_abs_diff(const RealMatrix& o) const;

  ComplexMatrix to_complex() const;
  /// Real part; throws when the imaginary residue exceeds imag_tol.
  static RealMatrix from_complex(const ComplexMatrix& m,
                                 double imag_tol = 1e-9);

private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

}  // namespace zeno
