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

// Independent reference values for the tests: closed-form generator
// matrices, Kraus sums and explicit conjugations. Nothing here goes through
// the tensor-network contraction used by the library.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "zxe/matrix.hpp"

namespace zxe::oracle {

inline const Complex kI{0.0, 1.0};
inline const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

inline ComplexMatrix okron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      m(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
  return m;
}

inline ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t k) {
  ComplexMatrix m = ComplexMatrix::identity(1);
  for (std::size_t i = 0; i < k; ++i) m = okron(m, a);
  return m;
}

inline ComplexMatrix H() { return {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}; }
inline ComplexMatrix I2() { return ComplexMatrix::identity(2); }
inline ComplexMatrix X() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix Y() { return {{0.0, -kI}, {kI, 0.0}}; }
inline ComplexMatrix Z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
inline ComplexMatrix CNOT() {
  return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
}

/// |0..0><0..0| + e^{ia}|1..1><1..1|, 2^m x 2^n.
inline ComplexMatrix z_spider(std::size_t n, std::size_t m, double alpha) {
  ComplexMatrix s(std::size_t{1} << m, std::size_t{1} << n);
  s(0, 0) += 1.0;
  s(s.rows() - 1, s.cols() - 1) += std::polar(1.0, alpha);
  return s;
}

inline ComplexMatrix x_spider(std::size_t n, std::size_t m, double alpha) {
  return kron_power(H(), m) * z_spider(n, m, alpha) * kron_power(H(), n);
}

inline ComplexMatrix ket(std::size_t dim, std::size_t k) {
  ComplexMatrix v(dim, 1);
  v(k, 0) = 1.0;
  return v;
}

inline ComplexMatrix density(const ComplexMatrix& psi) { return psi * psi.adjoint(); }

/// (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z).
inline ComplexMatrix depolarize(const ComplexMatrix& rho, double p) {
  return (1.0 - p) * rho +
         (p / 3.0) * (X() * rho * X() + Y() * rho * Y() + Z() * rho * Z());
}

/// Column-stacked superoperator of rho -> sum_k K rho K^dagger, built by
/// applying the map to each matrix unit.
template <class Map>
ComplexMatrix superop_of(std::size_t din, std::size_t dout, Map&& phi) {
  ComplexMatrix s(dout * dout, din * din);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t j = 0; j < din; ++j) {
      ComplexMatrix unit(din, din);
      unit(i, j) = 1.0;
      ComplexMatrix out = phi(unit);
      for (std::size_t r = 0; r < dout; ++r)
        for (std::size_t c = 0; c < dout; ++c) s(r + c * dout, i + j * din) = out(r, c);
    }
  return s;
}

/// exp(i a P) for P with P^2 = I, summed as a power series.
inline ComplexMatrix exp_i(double a, const ComplexMatrix& p) {
  ComplexMatrix acc = ComplexMatrix::identity(p.rows());
  ComplexMatrix term = ComplexMatrix::identity(p.rows());
  for (int k = 1; k < 40; ++k) {
    term = term * p * (kI * a / double(k));
    acc += term;
  }
  return acc;
}

}  // namespace zxe::oracle
