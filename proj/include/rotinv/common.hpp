// Copyright 2026 The rotinv Authors
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

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rotinv {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Raised when a party count is zero or exceeds a configured cap.
class InvalidSizeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a scalar argument lies outside its admissible range.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Raised when two objects disagree on party count or dimension.
class ShapeError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A planar direction (cos a, sin a) or, more generally, any real 2-vector
/// contracted against one tensor slot.
using Vec2 = std::array<double, 2>;

inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Number of planar tensor entries (or Hilbert-space dimension) for n parties.
inline std::size_t pow2(int n) { return std::size_t{1} << n; }

/// Maps an angle onto [0, 2pi).
inline double wrap_angle(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

}  // namespace rotinv
