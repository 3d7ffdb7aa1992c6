// SPDX-License-Identifier: Apache-2.0
//
// evcb - evanescent codeword analysis for Kronecker-product DFT codebooks
// Copyright (C) 2026 The evcb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef EVCB_TYPES_HPP
#define EVCB_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace evcb {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0; // m/s

// Relative slack on the ellipse test. Points on the boundary are regular;
// the slack absorbs rounding in alpha = d * f / c.
inline constexpr double kBoundaryTolerance = 1e-12;

enum class ErrorCode {
    invalid_argument = 1,
    range = 2,
    domain = 3,
    shape = 4,
    io = 5,
};

// All library failures are reported through this type; the C API maps
// code() onto its integer status values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

} // namespace evcb

#endif
