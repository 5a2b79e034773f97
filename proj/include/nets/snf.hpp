#pragma once

#include <cstdint>
#include <vector>

#include "nets/intvec.hpp"

namespace nets {

// Smith decomposition U*A*V = D of an m x 3 integer matrix.
// Invariant factors satisfy d1 | d2 | d3, all >= 0.
struct SmithResult {
    std::array<int64_t, 3> factors{0, 0, 0};
    std::vector<std::vector<int64_t>> left;   // m x m unimodular
    IntMat3 right;                            // 3 x 3 unimodular
    int rank = 0;

    // Index of the generated sublattice in Z^3 when rank 3, product of the factors.
    int64_t lattice_index() const { return rank == 3 ? factors[0] * factors[1] * factors[2] : 0; }
};

SmithResult smith_normal_form(const std::vector<IntVec3>& rows);

// Rank of the sublattice of Z^3 generated by the rows.
int lattice_rank(const std::vector<IntVec3>& rows);

}  // namespace nets
