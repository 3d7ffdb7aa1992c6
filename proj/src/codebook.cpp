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

#include "evcb/codebook.hpp"

#include <string>

namespace evcb {

namespace {

// exp(j*2*pi*num/den) with the numerator reduced first, so that large or
// negative exponents produce bit-identical values to their residues.
cplx unit_root(long long num, long long den) {
    long long r = num % den;
    if (r < 0) r += den;
    // Split off whole quarter turns so 1, j, -1, -j come out exact.
    const long long q = (4 * r) / den, rem = (4 * r) % den;
    const double angle = 0.5 * kPi * static_cast<double>(rem) / static_cast<double>(den);
    const double c = std::cos(angle), s = std::sin(angle);
    switch (q) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
    }
}

} // namespace

void CodebookConfig::validate() const {
    if (n1 < 1 || n2 < 1 || o1 < 1 || o2 < 1)
        throw Error(ErrorCode::invalid_argument,
                    "codebook factors must be >= 1 (got n1=" + std::to_string(n1) + " n2=" +
                        std::to_string(n2) + " o1=" + std::to_string(o1) + " o2=" + std::to_string(o2) + ")");
}

void check_index(const CodebookConfig &cfg, CodewordIndex idx) {
    cfg.validate();
    if (idx.l < 0 || idx.l >= cfg.grid1() || idx.m < 0 || idx.m >= cfg.grid2())
        throw Error(ErrorCode::range, "codeword index (" + std::to_string(idx.l) + "," + std::to_string(idx.m) +
                                          ") outside [0," + std::to_string(cfg.grid1()) + ")x[0," +
                                          std::to_string(cfg.grid2()) + ")");
}

std::vector<cplx> codeword_entries(const CodebookConfig &cfg, long long l, long long m) {
    cfg.validate();
    const long long g1 = cfg.grid1();
    const long long g2 = cfg.grid2();
    // Exact rational phase: n1_i*l/g1 + n2_i*m/g2 = (n1_i*l*g2 + n2_i*m*g1) / (g1*g2)
    const long long den = g1 * g2;
    std::vector<cplx> out;
    out.reserve(cfg.antennas());
    for (long long i = 0; i < cfg.n1; ++i)
        for (long long k = 0; k < cfg.n2; ++k)
            out.push_back(unit_root(((i * l) % g1) * g2 + ((k * m) % g2) * g1, den));
    return out;
}

Codeword generate_codeword(const CodebookConfig &cfg, CodewordIndex idx) {
    check_index(cfg, idx);
    return {idx, codeword_entries(cfg, idx.l, idx.m)};
}

ShiftedIndex shift_index(const CodebookConfig &cfg, CodewordIndex idx) {
    check_index(cfg, idx);
    const int g1 = cfg.grid1();
    const int g2 = cfg.grid2();
    // l <= g/2 compared in integers as 2l <= g
    return {2 * idx.l <= g1 ? idx.l : idx.l - g1, 2 * idx.m <= g2 ? idx.m : idx.m - g2};
}

CodewordIndex unshift_index(const CodebookConfig &cfg, ShiftedIndex s) {
    cfg.validate();
    const int g1 = cfg.grid1();
    const int g2 = cfg.grid2();
    if (2 * s.l <= -g1 || 2 * s.l > g1 || 2 * s.m <= -g2 || 2 * s.m > g2)
        throw Error(ErrorCode::range, "shifted index (" + std::to_string(s.l) + "," + std::to_string(s.m) +
                                          ") outside the half-open shifted range");
    return {s.l < 0 ? s.l + g1 : s.l, s.m < 0 ? s.m + g2 : s.m};
}

std::pair<double, double> nominal_phase_gradients(const CodebookConfig &cfg, CodewordIndex idx) {
    check_index(cfg, idx);
    return {kTwoPi * idx.l / cfg.grid1(), kTwoPi * idx.m / cfg.grid2()};
}

std::vector<cplx> dft_basis(int n, int o) {
    if (n < 1 || o < 1) throw Error(ErrorCode::invalid_argument, "dft_basis requires n, o >= 1");
    const long long g = static_cast<long long>(n) * o;
    std::vector<cplx> basis(static_cast<std::size_t>(g) * n);
    for (long long l = 0; l < g; ++l)
        for (long long i = 0; i < n; ++i) basis[l * n + i] = unit_root(i * l, g);
    return basis;
}

} // namespace evcb
