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

#include <cstdint>
#include <string>

namespace zxe {

/// A spider phase in [0, 2pi).
///
/// The default representation is an exact rational multiple of pi kept in
/// lowest terms, so rules that depend on a phase being exactly 0 or pi can
/// fire without tolerance games. A float variant (radians) exists for
/// irrational angles; anything involving a float phase stays float.
class Phase {
 public:
  /// Phase 0.
  Phase() = default;

  /// (num/den) * pi, reduced and wrapped into [0, 2pi). den must be nonzero.
  static Phase rational(std::int64_t num, std::int64_t den = 1);
  /// Radians, wrapped into [0, 2pi).
  static Phase radians(double value);

  static Phase zero() { return Phase(); }
  static Phase pi() { return rational(1, 1); }

  bool is_exact() const noexcept { return exact_; }
  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }

  /// Value in radians.
  double to_radians() const noexcept;

  bool is_zero() const noexcept { return exact_ && num_ == 0; }
  bool is_pi() const noexcept { return exact_ && num_ == 1 && den_ == 1; }

  Phase operator+(const Phase& other) const;
  Phase operator-() const;
  Phase operator-(const Phase& other) const { return *this + (-other); }

  /// Exact rationals compare structurally; any float side compares within
  /// 1e-12 radians (modulo 2pi).
  bool operator==(const Phase& other) const noexcept;
  bool operator!=(const Phase& other) const noexcept { return !(*this == other); }

  /// Human readable, e.g. "0", "pi", "3pi/4", "1.2345rad".
  std::string to_string() const;

 private:
  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double rad_ = 0.0;
};

}  // namespace zxe
