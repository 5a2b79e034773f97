#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nets/invariants.hpp"

namespace nets {

// The 13 direction classes available to a depth-1 lattice net: axial (a),
// face diagonals through the origin (f), skew face diagonals (g), and the
// four cube diagonals (d).
struct EdgeAlphabet {
    static constexpr int size = 13;
    static const std::array<IntVec3, size>& directions();
    static const std::array<const char*, size>& names();
    static int class_of(IntVec3 v);  // -1 when v is not +-direction of any class
};

// Nonempty subset of the 13 classes, encoded as a bitmask.
struct EdgeWord {
    uint16_t mask = 0;

    std::vector<IntVec3> directions() const;
    std::string str() const;
    int count() const { return __builtin_popcount(mask); }

    friend bool operator==(EdgeWord a, EdgeWord b) { return a.mask == b.mask; }
    friend bool operator<(EdgeWord a, EdgeWord b) { return a.mask < b.mask; }

    static EdgeWord parse(const std::string& letters);  // e.g. "ax ay gz d1"
};

struct LatticeWordInfo {
    EdgeWord word;
    bool proper = false;
    bool connected = false;
};

// All 2^13 - 1 words realized at the origin and filtered by properness.
std::vector<LatticeWordInfo> enumerate_lattice_words();

// Lexicographic minimum of the word's orbit under the 48 signed permutations
// and 12 elementary shears, restricted to images inside the alphabet.
EdgeWord canonicalize_lattice_word(EdgeWord w);

struct LatticeClass {
    EdgeWord canonical;
    std::vector<EdgeWord> members;
    bool connected = false;
    Fingerprint fp;
};

struct LatticeCensus {
    std::vector<LatticeClass> connected;     // expected: 19 classes
    std::vector<LatticeClass> disconnected;  // expected: 6 classes
};

// Groups proper words by canonical form and fingerprints one representative
// per class. Throws when the class counts differ from 19/6.
LatticeCensus lattice_census(bool enforce_counts = true);

// Bipartite double-lattice instance: m distinct connecting labels in
// {-1,0,1}^3 including (0,0,0).
struct DoubleLatticeInstance {
    std::vector<IntVec3> labels;  // sorted
    Rat3 placement;               // witness position of the second node
};

// Admissible instances: indivisible, connected, and proper at one of a fixed
// list of candidate placements of the second lattice.
std::vector<DoubleLatticeInstance> enumerate_double_lattice(int m);

struct DoubleLatticeClass {
    std::vector<IntVec3> labels;  // representative
    int members = 0;
    std::vector<int64_t> cs_prefix;
};

struct DoubleLatticeClassification {
    std::vector<DoubleLatticeClass> classes;
    // Pairs of distinct classes sharing a coordination prefix, for review;
    // such pairs are never merged.
    std::vector<std::pair<int, int>> prefix_collisions;
};

// Label sets L, L' are equivalent iff L' = e*X*L + c with X unimodular,
// c integral, e = +-1. Classes cross-checked against coordination prefixes.
DoubleLatticeClassification classify_double_lattice_topologies(
    const std::vector<DoubleLatticeInstance>& instances);

// Decision procedure for one pair (exposed for property tests).
bool double_lattice_equivalent(const std::vector<IntVec3>& a, const std::vector<IntVec3>& b);

// Model net of a double-lattice instance at a given placement.
ModelNet double_lattice_net(const std::vector<IntVec3>& labels, const Rat3& p2);

}  // namespace nets
