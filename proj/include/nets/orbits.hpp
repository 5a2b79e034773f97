#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nets/invariants.hpp"

namespace nets {

// Symmetry of the discrete torus {0..n-1}^3: a signed axis permutation
// followed by a shift. Coordinate negation acts as j -> (n-1) - j.
struct GridSymmetry {
    std::array<uint8_t, 3> src{0, 1, 2};  // output axis a reads input axis src[a]
    std::array<bool, 3> negate{false, false, false};
    std::array<uint8_t, 3> shift{0, 0, 0};

    GridPattern apply(const GridPattern& p) const;
    int rotation_det() const;
};

enum class GridGroup {
    Shifts,            // C_n x C_n x C_n
    Rotations24,       // proper rotations of the cube
    ShiftRotations24,  // semidirect product with the proper rotations
    ShiftRotations48,  // semidirect product with the full point group;
                       // the convention behind the reference isotopy counts
};

// All pattern representations (y-permutation, z-permutation) of size n.
uint64_t pattern_space_size(int n);  // (n!)^2

// Enumerates patterns by Lehmer index; callback receives (index, pattern).
void for_each_pattern(int n, const std::function<void(uint64_t, const GridPattern&)>& fn);

GridPattern pattern_from_index(int n, uint64_t index);
uint64_t pattern_index(const GridPattern& p);

// Generators and full element list of a grid symmetry group.
std::vector<GridSymmetry> group_generators(int n, GridGroup g);
std::vector<GridSymmetry> group_elements(int n, GridGroup g);

// Orbit counting by breadth-first closure under generators (serial reference).
uint64_t count_orbits(int n, GridGroup g);

// Orbit counting by canonical minimum image over the full group, parallelized
// across the pattern space. Algorithmically independent of count_orbits.
uint64_t count_orbits_minimage(int n, GridGroup g);

// Burnside closed form for the shift group:
// ((n!)^2 + sum over r | n, r > 1 of phi(r)^3 * prod_j (n - j r)^2) / n^3.
uint64_t alpha_closed_form(int n);

// Orbit count under the 24 proper rotations alone (framed grids).
uint64_t rho(int n);

// Semidirect-group orbits that contain a pattern whose full stabilizer
// (48 signed permutations x shifts) acts transitively on its points.
uint64_t beta_t(int n);

// One representative pattern per transitive class counted by beta_t.
std::vector<GridPattern> transitive_class_representatives(int n);

// Distinct shift-orbits contained in each semidirect orbit, summed; equals
// the shift-orbit count when the refinement is consistent.
uint64_t alpha_via_beta_refinement(int n);

}  // namespace nets
