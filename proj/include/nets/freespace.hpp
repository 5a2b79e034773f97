#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nets/geometry.hpp"

namespace nets {

// Sampled admissibility of one mobile node over the unit cell, evaluated
// exactly at cell centers ((i+1/2)/R, ...) and at the shared face centers
// between neighbouring cells. Improper walls of codimension one lie on the
// sampled face lattice, so face verdicts gate cell adjacency.
struct FreeRegionScan {
    int resolution = 0;
    VertexId mobile = 0;
    std::vector<char> admissible;   // R^3 cells, x-major
    // face_open[axis]: face between cell c and its +axis neighbour (wrapped);
    // empty means unconstrained (synthetic scans).
    std::array<std::vector<char>, 3> face_open;
    std::vector<int> component;     // -1 for inadmissible cells
    int component_count = 0;
    std::vector<IntVec3> representatives;  // lexicographically smallest cell per component
    bool trivial_mobile = false;           // mobile vertex has no incident edges

    int cell_index(IntVec3 c) const {
        return (int)((c.x * resolution + c.y) * resolution + c.z);
    }
};

// Places the mobile vertex at every cell center and evaluates properness
// exactly; all other positions fixed. Requires depth <= 1.
FreeRegionScan scan_free_region(const LabeledQuotientGraph& g, const std::map<VertexId, Rat3>& fixed,
                                VertexId mobile, int resolution);

// Serial reference of the same scan (no thread partitioning).
FreeRegionScan scan_free_region_serial(const LabeledQuotientGraph& g, const std::map<VertexId, Rat3>& fixed,
                                       VertexId mobile, int resolution);

// 6-connected union-find over the admissible cells with wraparound on all
// three axes; fills component labels, count, and representatives.
void count_components(FreeRegionScan& scan);

// Component id of the cell containing the point; throws when inadmissible.
int classify_representative(const FreeRegionScan& scan, const Rat3& point);

// Run-length-encoded admissibility plus component labels.
std::string free_region_json(const FreeRegionScan& scan);

}  // namespace nets
