#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nets/geometry.hpp"
#include "nets/lqg.hpp"

namespace nets {

// Shell sizes n_1..n_K of the net counted from one representative of the
// given vertex class by breadth-first search over vertex translates.
std::vector<int64_t> coordination_sequence(const ModelNet& m, VertexId seed, int shells);

// 1 + sum of the first ten shell sizes.
int64_t td10(const ModelNet& m, VertexId seed);

// Number of coplanar triples among the loop direction classes.
// Requires a single-vertex quotient graph.
int hxl_multiplicity(const ModelNet& m);

// Strong local catenation markers. three_k / four_k give the maximal number
// of disjoint parallel triangle hulls / untriangulated parallelogram
// interiors pierced by a single edge (0 = none).
struct PenetrationFlags {
    int three_k = 0;
    int four_k = 0;

    friend bool operator==(PenetrationFlags a, PenetrationFlags b) {
        return a.three_k == b.three_k && a.four_k == b.four_k;
    }
    std::string str() const;
};

// Geometric detection on the lattice translates of the motif within a small
// window. Requires a single-vertex depth-1 quotient graph.
PenetrationFlags penetration_type(const ModelNet& m);

// Word-level rule for the strong (k = 2) markers of standardized lattice edge
// words: 3^2 iff all three skew face diagonals and the cube diagonal are
// present; 4^2 iff the cube diagonal and exactly two skew face diagonals are.
PenetrationFlags combinatorial_penetration(const std::vector<IntVec3>& directions);

// Discretised n-grid: n points of {0..n-1}^3, pairwise distinct in every
// coordinate, stored sorted by x. Point i is (i, y[i], z[i]).
struct GridPattern {
    int n = 0;
    std::array<uint8_t, 8> y{};
    std::array<uint8_t, 8> z{};

    friend bool operator==(const GridPattern& a, const GridPattern& b) {
        if (a.n != b.n) return false;
        for (int i = 0; i < a.n; ++i)
            if (a.y[i] != b.y[i] || a.z[i] != b.z[i]) return false;
        return true;
    }
    uint64_t key() const {
        uint64_t k = 0;
        for (int i = 0; i < n; ++i) k = k * 64 + a_pack(y[i], z[i]);
        return k;
    }

private:
    static uint64_t a_pack(uint8_t a, uint8_t b) { return (uint64_t)a * 8 + b; }
};

// Triple of coordinate cyclic orders, canonicalised over torus shifts.
// Constant on shift-orbits of patterns.
struct CyclicOrderInvariant {
    std::vector<uint8_t> code;

    friend bool operator==(const CyclicOrderInvariant& a, const CyclicOrderInvariant& b) {
        return a.code == b.code;
    }
    friend bool operator!=(const CyclicOrderInvariant& a, const CyclicOrderInvariant& b) { return !(a == b); }
};

CyclicOrderInvariant cyclic_order_invariant(const GridPattern& p);

// Tuple of computable discriminators for a model net.
struct Fingerprint {
    std::vector<int> coordination;         // per vertex class
    std::vector<int64_t> cs;               // shells 1..10 from class 0
    int64_t td10 = 0;
    std::optional<int> hxl;                // single-vertex nets only
    std::optional<PenetrationFlags> penetration;  // single-vertex depth-1 nets only
    DimensionType dim;
    int64_t multiplicity = 0;  // component multiplicity, 0 = infinite

    std::string csv_row() const;
    friend bool operator==(const Fingerprint& a, const Fingerprint& b);
};

Fingerprint fingerprint(const ModelNet& m);

}  // namespace nets
