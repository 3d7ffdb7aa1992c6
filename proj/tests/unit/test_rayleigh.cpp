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

#include "evcb/classifier.hpp"
#include "evcb/rayleigh.hpp"

#include <doctest.h>

#include <cmath>

using namespace evcb;

namespace {

double energy(const std::vector<cplx> &v) {
    double e = 0.0;
    for (const cplx &z : v) e += std::norm(z);
    return e;
}

} // namespace

TEST_CASE("generation is deterministic and substream-stable") {
    RayleighConfig cfg;
    cfg.seed = 42;
    cfg.realizations = 5;
    const auto a = generate_rayleigh(cfg);
    const auto b = generate_rayleigh(cfg);
    REQUIRE(a.size() == 5);
    for (std::size_t r = 0; r < 5; ++r) CHECK(a[r].gains == b[r].gains);
    cfg.realizations = 2;
    const auto c = generate_rayleigh(cfg);
    CHECK(c[1].gains == a[1].gains);
    cfg.seed = 43;
    CHECK(generate_rayleigh(cfg)[0].gains != a[0].gains);
    cfg.realizations = 0;
    CHECK(generate_rayleigh(cfg).empty());
}

TEST_CASE("unit average power per element") {
    RayleighConfig cfg;
    cfg.seed = 1;
    cfg.realizations = 10000;
    const auto chs = generate_rayleigh(cfg);
    std::vector<double> acc(64, 0.0);
    for (const auto &ch : chs)
        for (std::size_t i = 0; i < 64; ++i) acc[i] += std::norm(ch.gains[i]);
    for (double s : acc) CHECK(std::abs(s / 1e4 - 1.0) < 0.05);
}

TEST_CASE("spectrum is the unitary codebook transform") {
    const ArrayGeometry g{4, 6, 0.5, 0.5, 1.0};
    RayleighConfig cfg{4, 6, 0.5, 0.5, 9, 1};
    const ChannelVector h = generate_rayleigh(cfg)[0];
    const auto x = spatial_spectrum(h);
    CHECK(energy(x) == doctest::Approx(energy(h.gains)));
    for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 6; ++m) {
            const auto v = generate_codeword({4, 6, 1, 1}, {l, m}).entries;
            cplx acc{};
            for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * h.gains[i];
            CHECK(std::abs(x[l * 6 + m] - acc / std::sqrt(24.0)) < 1e-12);
        }
    const ChannelVector back = from_spatial_spectrum(g, x);
    for (std::size_t i = 0; i < 24; ++i) CHECK(std::abs(back.gains[i] - h.gains[i]) < 1e-12);
}

TEST_CASE("filter leaves in-band channels alone") {
    const ArrayGeometry g{8, 8, 0.5, 0.5, 1.0};
    auto v = generate_codeword({8, 8, 1, 1}, {1, 2}).entries;
    for (cplx &z : v) z = std::conj(z);
    const ChannelVector out = filter_evanescent({g, v}, 0.5, 0.5);
    for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(out.gains[i] - v[i]) < 1e-12);
}

TEST_CASE("filter is an orthogonal projection") {
    RayleighConfig cfg{8, 8, 0.5, 0.5, 3, 50};
    const EvanescentMask mask({8, 8, 1, 1}, 0.5, 0.5);
    for (const ChannelVector &h : generate_rayleigh(cfg)) {
        const ChannelVector once = filter_evanescent(h, 0.5, 0.5);
        const ChannelVector twice = filter_evanescent(once, 0.5, 0.5);
        for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(once.gains[i] - twice.gains[i]) < 1e-12);
        CHECK(energy(once.gains) <= energy(h.gains));
        cplx ip{};
        for (std::size_t i = 0; i < 64; ++i) ip += std::conj(h.gains[i] - once.gains[i]) * once.gains[i];
        CHECK(std::abs(ip) < 1e-9);
        const auto x = spatial_spectrum(once);
        double worst = 0.0;
        for (int l = 0; l < 8; ++l)
            for (int m = 0; m < 8; ++m)
                if (mask.flag({l, m})) worst = std::max(worst, std::abs(x[l * 8 + m]));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("override mask") {
    RayleighConfig cfg{4, 4, 0.5, 0.5, 5, 1};
    const ChannelVector h = generate_rayleigh(cfg)[0];
    std::vector<bool> none(16, false), all(16, true);
    const ChannelVector a = filter_evanescent(h, 0.5, 0.5, none);
    for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(a.gains[i] - h.gains[i]) < 1e-12);
    const ChannelVector b = filter_evanescent(h, 0.5, 0.5, all);
    CHECK(energy(b.gains) < 1e-24);
    try {
        filter_evanescent(h, 0.5, 0.5, std::vector<bool>(15, true));
        FAIL("accepted short override");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::shape);
    }
}

TEST_CASE("white input loses the evanescent-zone share") {
    const double zone = static_cast<double>(build_mask({8, 8, 1, 1}, 0.5, 0.5).count_evanescent()) / 64.0;
    CHECK(zone == doctest::Approx(17.0 / 64.0));
    RayleighConfig cfg{8, 8, 0.5, 0.5, 7, 10000};
    const FilteredBatch batch = filter_batch(cfg);
    CHECK(batch.removed_fraction.size() == 10000);
    CHECK(std::abs(batch.removed_mean / zone - 1.0) < 0.01);
    CHECK(batch.removed_std > 0.0);
}
