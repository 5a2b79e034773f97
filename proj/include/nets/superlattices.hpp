#pragma once

#include <cstdint>
#include <vector>

#include "nets/intvec.hpp"

namespace nets {

// Lower-triangular Hermite form with p1*p2*p3 = n, 0 <= q1 < p2,
// 0 <= q2 < p3, 0 <= r1 < p3. Rows of the inverse generate an index-n
// superlattice of Z^3.
struct HNFMatrix {
    int64_t p1 = 1, p2 = 1, p3 = 1;
    int64_t q1 = 0, q2 = 0, r1 = 0;

    int64_t index() const { return p1 * p2 * p3; }
};

std::vector<HNFMatrix> enumerate_hnf(int64_t n);

// Index-n superlattice of Z^3, stored by its n coset representatives scaled
// by n: a subgroup of (Z_n)^3 of order n, sorted, containing 0.
struct Superlattice {
    int64_t n = 1;
    std::vector<IntVec3> reps;

    friend bool operator==(const Superlattice& a, const Superlattice& b) {
        return a.n == b.n && a.reps == b.reps;
    }
    friend bool operator<(const Superlattice& a, const Superlattice& b) { return a.reps < b.reps; }
};

Superlattice coset_representatives(const HNFMatrix& l, int64_t n);

// Axis-grid noncrossing criterion: every pairwise difference of
// representatives is nonzero in all three coordinates.
bool is_proper_grid(const Superlattice& s);

struct BetaTTResult {
    uint64_t hnf_count = 0;
    uint64_t proper_count = 0;
    uint64_t classes = 0;
    std::vector<Superlattice> class_reps;
};

// Translation-transitive n-grid classes: proper superlattices reduced under
// the 48-element point group of the cubic lattice.
BetaTTResult beta_tt(int64_t n);

// Independent subgroup enumeration of (Z_n)^3, order n (test oracle).
uint64_t count_order_n_subgroups_bruteforce(int64_t n);

}  // namespace nets
