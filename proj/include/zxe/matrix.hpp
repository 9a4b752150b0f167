// Copyright 2026 The zxe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace zxe {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  /// 1x1 matrix holding `value`.
  static ComplexMatrix scalar(Complex value);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<Complex>& entries() const noexcept { return data_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;
  /// Largest |entry|.
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  /// Bitwise entry equality.
  bool operator==(const ComplexMatrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Kronecker product, shape (a.rows*b.rows, a.cols*b.cols).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |a_ij - b_ij|. Throws kShapeMismatch on differing shapes.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

enum class ScalarPolicy { kExact, kUpToScalar };

struct ScalarFit {
  bool equal = false;
  Complex lambda{1.0, 0.0};  // a ≈ lambda * b
  double residual = 0.0;     // ||a - lambda b||_inf
};

/// Compares a and b entrywise. Under kUpToScalar, lambda is estimated from
/// the largest-magnitude entry of b and must be nonzero; if b vanishes, the
/// matrices are equal only when a vanishes too (lambda reported as 1).
/// Throws kShapeMismatch.
ScalarFit fit_scalar(const ComplexMatrix& a, const ComplexMatrix& b, ScalarPolicy policy,
                     double tol);

inline bool scalar_equal(const ComplexMatrix& a, const ComplexMatrix& b, ScalarPolicy policy,
                         double tol) {
  return fit_scalar(a, b, policy, tol).equal;
}

}  // namespace zxe
