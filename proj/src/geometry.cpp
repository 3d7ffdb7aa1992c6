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

#include "evcb/geometry.hpp"

#include <cmath>

namespace evcb {

void ArrayGeometry::validate() const {
    if (n1 < 1 || n2 < 1) throw Error(ErrorCode::invalid_argument, "array needs n1, n2 >= 1");
    if (!(d1 > 0.0) || !(d2 > 0.0) || !(wavelength > 0.0))
        throw Error(ErrorCode::invalid_argument, "spacings and wavelength must be positive");
}

double ArrayGeometry::max_aperture() const {
    return std::hypot((n1 - 1) * d1, (n2 - 1) * d2);
}

ArrayGeometry ArrayGeometry::from_alpha(int n1, int n2, double alpha1, double alpha2, double wavelength) {
    ArrayGeometry g{n1, n2, alpha1 * wavelength, alpha2 * wavelength, wavelength};
    g.validate();
    return g;
}

WaveVector wave_vector(double k, Direction dir) {
    const double st = std::sin(dir.theta);
    return {k * st * std::cos(dir.phi), k * st * std::sin(dir.phi), k * std::cos(dir.theta)};
}

namespace {

// exp(sign * j * (kx*i*d1 + ky*k*d2)) over the array, x-major.
std::vector<cplx> linear_phase(const ArrayGeometry &g, double kx, double ky, double sign) {
    std::vector<cplx> out;
    out.reserve(g.antennas());
    for (int i = 0; i < g.n1; ++i)
        for (int k = 0; k < g.n2; ++k) out.push_back(std::polar(1.0, sign * (kx * i * g.d1 + ky * k * g.d2)));
    return out;
}

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

} // namespace

ChannelVector los_channel(const ArrayGeometry &geometry, Direction dir) {
    geometry.validate();
    if (dir.theta < 0.0 || dir.theta > kPi / 2 + 1e-12)
        throw Error(ErrorCode::domain, "direction outside the front hemisphere");
    const WaveVector kv = wave_vector(geometry.wavenumber(), dir);
    return {geometry, linear_phase(geometry, kv.kx, kv.ky, -1.0)};
}

ChannelVector steering_from_wavenumbers(const ArrayGeometry &geometry, double kx, double ky) {
    geometry.validate();
    return {geometry, linear_phase(geometry, kx, ky, +1.0)};
}

DispersionResult dispersion_kz(double k, double kx, double ky) {
    if (!(k > 0.0)) throw Error(ErrorCode::domain, "wavenumber must be positive");
    const double kt2 = kx * kx + ky * ky;
    const double k2 = k * k;
    if (kt2 <= k2) return {std::sqrt(k2 - kt2), true};
    return {std::sqrt(kt2 - k2), false};
}

double focus_distance(SphericalPoint focus, double x, double y) {
    const double st = std::sin(focus.theta);
    const double dx = x - focus.r * st * std::cos(focus.phi);
    const double dy = y - focus.r * st * std::sin(focus.phi);
    const double dz = focus.r * std::cos(focus.theta);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

ChannelVector near_field_channel(const ArrayGeometry &geometry, SphericalPoint focus) {
    geometry.validate();
    if (!(focus.r > 0.0)) throw Error(ErrorCode::domain, "focus distance must be positive");
    const double k = geometry.wavenumber();
    ChannelVector ch{geometry, {}};
    ch.gains.reserve(geometry.antennas());
    for (int i = 0; i < geometry.n1; ++i)
        for (int j = 0; j < geometry.n2; ++j)
            ch.gains.push_back(std::polar(1.0, k * focus_distance(focus, i * geometry.d1, j * geometry.d2)));
    return ch;
}

LocalWavenumbers near_field_gradients(double k, SphericalPoint focus, double x, double y) {
    if (!(k > 0.0)) throw Error(ErrorCode::domain, "wavenumber must be positive");
    if (!(focus.r > 0.0)) throw Error(ErrorCode::domain, "focus distance must be positive");
    const double st = std::sin(focus.theta);
    // Offsets from the probe towards the focus projection.
    const double ux = focus.r * st * std::cos(focus.phi) - x;
    const double uy = focus.r * st * std::sin(focus.phi) - y;
    const double h = focus.r * std::cos(focus.theta);

    // k*sgn(u)/sqrt(1 + (v/u)^2 + (h/u)^2) written as k*u/|r|, which keeps
    // sgn(0) = 0 and avoids the 0/0 in the ratio form.
    const double dist = std::sqrt(ux * ux + uy * uy + h * h);
    LocalWavenumbers w;
    if (dist == 0.0) return w;
    w.kx = ux == 0.0 ? 0.0 : k * sgn(ux) * (std::abs(ux) / dist);
    w.ky = uy == 0.0 ? 0.0 : k * sgn(uy) * (std::abs(uy) / dist);
    const double t2 = ux * ux + uy * uy;
    w.kt = t2 == 0.0 ? 0.0 : k / std::sqrt(1.0 + h * h / t2);
    return w;
}

FresnelRange fresnel_range(double aperture, double wavelength) {
    if (aperture < 0.0 || !(wavelength > 0.0))
        throw Error(ErrorCode::domain, "aperture must be >= 0 and wavelength > 0");
    return {0.62 * std::sqrt(aperture * aperture * aperture / wavelength), 2.0 * aperture * aperture / wavelength};
}

} // namespace evcb
