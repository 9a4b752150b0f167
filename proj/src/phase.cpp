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

#include "zxe/phase.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "zxe/error.hpp"

namespace zxe {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFloatPhaseTol = 1e-12;

double wrap_radians(double value) {
  double r = std::fmod(value, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

}  // namespace

Phase Phase::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "phase denominator is zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  num /= g;
  den /= g;
  // value/pi lives in [0, 2): reduce numerator modulo 2*den.
  std::int64_t period = 2 * den;
  num %= period;
  if (num < 0) num += period;
  g = std::gcd(num, den);
  if (g == 0) g = 1;
  Phase p;
  p.exact_ = true;
  p.num_ = num / g;
  p.den_ = den / g;
  if (p.num_ == 0) p.den_ = 1;
  return p;
}

Phase Phase::radians(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::kInvalidArgument, "phase is not finite");
  Phase p;
  p.exact_ = false;
  p.num_ = 0;
  p.den_ = 1;
  p.rad_ = wrap_radians(value);
  return p;
}

double Phase::to_radians() const noexcept {
  if (!exact_) return rad_;
  return std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
}

Phase Phase::operator+(const Phase& other) const {
  if (exact_ && other.exact_) {
    // Keep the intermediate small: the lcm of two reduced denominators.
    std::int64_t l = std::lcm(den_, other.den_);
    return rational(num_ * (l / den_) + other.num_ * (l / other.den_), l);
  }
  return radians(to_radians() + other.to_radians());
}

Phase Phase::operator-() const {
  if (exact_) return rational(-num_, den_);
  return radians(-rad_);
}

bool Phase::operator==(const Phase& other) const noexcept {
  if (exact_ && other.exact_) return num_ == other.num_ && den_ == other.den_;
  double d = std::fabs(to_radians() - other.to_radians());
  d = std::min(d, kTwoPi - d);
  return d <= kFloatPhaseTol;
}

std::string Phase::to_string() const {
  std::ostringstream os;
  if (!exact_) {
    os.precision(17);
    os << rad_ << "rad";
    return os.str();
  }
  if (num_ == 0) return "0";
  if (num_ != 1) os << num_;
  os << "pi";
  if (den_ != 1) os << "/" << den_;
  return os.str();
}

}  // namespace zxe
