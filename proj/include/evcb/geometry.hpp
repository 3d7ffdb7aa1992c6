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

#ifndef EVCB_GEOMETRY_HPP
#define EVCB_GEOMETRY_HPP

#include "evcb/types.hpp"

#include <cstddef>
#include <vector>

namespace evcb {

// Uniform planar array in the x-o-y plane. Antenna (i, k) sits at
// (i*d1, k*d2, 0); antenna (0, 0) is the origin.
struct ArrayGeometry {
    int n1 = 1;
    int n2 = 1;
    double d1 = 0.5;         // m
    double d2 = 0.5;         // m
    double wavelength = 1.0; // m

    // Throws Error(invalid_argument) on non-positive counts or lengths.
    void validate() const;

    double alpha1() const { return d1 / wavelength; }
    double alpha2() const { return d2 / wavelength; }
    double wavenumber() const { return kTwoPi / wavelength; }
    double max_aperture() const;
    std::size_t antennas() const { return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2); }

    // Geometry with the given normalized spacings.
    static ArrayGeometry from_alpha(int n1, int n2, double alpha1, double alpha2, double wavelength = 1.0);
};

struct WaveVector {
    double kx = 0.0;
    double ky = 0.0;
    double kz = 0.0;
};

// Elevation from the array normal and azimuth from +x.
struct Direction {
    double theta = 0.0; // [0, pi/2]
    double phi = 0.0;   // [0, 2*pi)
};

// Focus point in spherical coordinates about the array origin.
struct SphericalPoint {
    double r = 1.0;
    double theta = 0.0;
    double phi = 0.0;
};

// Per-antenna complex gains, same x-major order as codeword entries.
struct ChannelVector {
    ArrayGeometry geometry;
    std::vector<cplx> gains;
};

WaveVector wave_vector(double k, Direction dir);

// gain(i,k) = exp(-j(kx*i*d1 + ky*k*d2)), kx = k sin(theta)cos(phi), ky = k sin(theta)sin(phi).
ChannelVector los_channel(const ArrayGeometry &geometry, Direction dir);

// Precoding with prescribed physical phase gradients:
// gain(i,k) = exp(+j(kx*i*d1 + ky*k*d2)). Evanescent (kx, ky) are allowed.
ChannelVector steering_from_wavenumbers(const ArrayGeometry &geometry, double kx, double ky);

struct DispersionResult {
    double kz = 0.0;          // longitudinal wavenumber, or decay constant when !propagating
    bool propagating = true;
};

DispersionResult dispersion_kz(double k, double kx, double ky);

// Spherical-phase channel towards a focus: gain = exp(+j*k*dist(antenna, focus)).
// Same propagation kernel as the pattern synthesis; no amplitude taper.
ChannelVector near_field_channel(const ArrayGeometry &geometry, SphericalPoint focus);

// Distance from the planar point (x, y, 0) to the focus.
double focus_distance(SphericalPoint focus, double x, double y);

struct LocalWavenumbers {
    double kx = 0.0;
    double ky = 0.0;
    double kt = 0.0;
};

// Local plane-wave wavenumbers of the near-field channel at a planar probe,
// in the los_channel sign convention (the phase slope is -kx, -ky), so they
// tend to (k sin(theta)cos(phi), k sin(theta)sin(phi)) far from the array.
// kt <= k holds for every focus and probe.
LocalWavenumbers near_field_gradients(double k, SphericalPoint focus, double x, double y);

struct FresnelRange {
    double inner = 0.0; // 0.62 sqrt(D^3 / lambda)
    double outer = 0.0; // 2 D^2 / lambda
};

FresnelRange fresnel_range(double aperture, double wavelength);

} // namespace evcb

#endif
