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

#ifndef EVCB_RAYLEIGH_HPP
#define EVCB_RAYLEIGH_HPP

#include "evcb/classifier.hpp"
#include "evcb/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace evcb {

struct RayleighConfig {
    int n1 = 8;
    int n2 = 8;
    double alpha1 = 0.5;
    double alpha2 = 0.5;
    std::uint64_t seed = 0;
    std::size_t realizations = 1;
};

// Engine for substream `stream` of `seed`; streams are independent of how
// many other streams were drawn, so batches can be split freely.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream);

// i.i.d. CN(0, 1) gains; realization r uses substream(seed, r).
std::vector<ChannelVector> generate_rayleigh(const RayleighConfig &cfg);

// Unitary 2-D DFT aligned with the o1 = o2 = 1 codebook:
// X(l, m) = v_lm^T h / sqrt(n1 n2). Row-major (l, m).
std::vector<cplx> spatial_spectrum(const ChannelVector &ch);
ChannelVector from_spatial_spectrum(const ArrayGeometry &geometry, const std::vector<cplx> &spectrum);

// Zeroes every spectral component flagged evanescent at (alpha1, alpha2) and
// transforms back. `override_mask`, when given, replaces the default zone
// (true = remove); it must cover the n1 x n2 grid.
ChannelVector filter_evanescent(const ChannelVector &ch, double alpha1, double alpha2,
                                const std::optional<std::vector<bool>> &override_mask = std::nullopt);

struct FilteredBatch {
    std::vector<ChannelVector> before;
    std::vector<ChannelVector> after;
    std::vector<double> removed_fraction; // |before - after|^2 / |before|^2
    double removed_mean = 0.0;
    double removed_std = 0.0;
};

FilteredBatch filter_batch(const RayleighConfig &cfg);

} // namespace evcb

#endif
