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

#ifndef EVCB_CODEBOOK_HPP
#define EVCB_CODEBOOK_HPP

#include "evcb/types.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace evcb {

// Kronecker-product DFT codebook CB(n1, n2; o1, o2). Codewords are generated
// on demand; nothing is materialized.
struct CodebookConfig {
    int n1 = 1; // antennas along x
    int n2 = 1; // antennas along y
    int o1 = 1; // oversampling along x
    int o2 = 1; // oversampling along y

    int grid1() const { return n1 * o1; }
    int grid2() const { return n2 * o2; }
    std::size_t antennas() const { return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2); }
    std::size_t cardinality() const {
        return static_cast<std::size_t>(grid1()) * static_cast<std::size_t>(grid2());
    }

    // Throws Error(invalid_argument) unless every factor is >= 1.
    void validate() const;
};

struct CodewordIndex {
    int l = 0; // [0, n1*o1)
    int m = 0; // [0, n2*o2)
    bool operator==(const CodewordIndex &) const = default;
};

// DFT-shifted index; zero spatial frequency sits at the grid centre.
struct ShiftedIndex {
    int l = 0; // (-n1*o1/2, n1*o1/2]
    int m = 0; // (-n2*o2/2, n2*o2/2]
    bool operator==(const ShiftedIndex &) const = default;
};

struct Codeword {
    CodewordIndex index;
    // n1*n2 unit-modulus entries, x-major: entries[n1_i * n2 + n2_i].
    std::vector<cplx> entries;
};

void check_index(const CodebookConfig &cfg, CodewordIndex idx);

// Entry (n1_i, n2_i) = exp(j*2*pi*(n1_i*l/(N1*O1) + n2_i*m/(N2*O2))).
Codeword generate_codeword(const CodebookConfig &cfg, CodewordIndex idx);

// Same phase law evaluated with arbitrary integer exponents (e.g. a shifted
// index). Equals generate_codeword for any exponents congruent modulo the grid.
std::vector<cplx> codeword_entries(const CodebookConfig &cfg, long long l, long long m);

ShiftedIndex shift_index(const CodebookConfig &cfg, CodewordIndex idx);
CodewordIndex unshift_index(const CodebookConfig &cfg, ShiftedIndex s);

// Nominal phase gradients in radians per element, both in [0, 2*pi).
std::pair<double, double> nominal_phase_gradients(const CodebookConfig &cfg, CodewordIndex idx);

// 1-D DFT basis rows: basis[l * n + i] = exp(j*2*pi*i*l/(n*o)), l in [0, n*o).
std::vector<cplx> dft_basis(int n, int o);

} // namespace evcb

#endif
