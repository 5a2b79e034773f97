#pragma once

#include <optional>
#include <vector>

#include "nets/lqg.hpp"
#include "nets/rational.hpp"

namespace nets {

// Closed line segment in ambient coordinates, a != b.
struct Segment {
    Rat3 a, b;
};

// Quotient graph plus exact node positions in [0,1)^3 under the standard basis.
struct ModelNet {
    LabeledQuotientGraph lqg;
    std::vector<Rat3> positions;  // indexed by vertex id

    // Ambient segment of a motif edge, optionally shifted by a cell vector.
    Segment edge_segment(const DirectedLabeledEdge& e, IntVec3 shift = {0, 0, 0}) const;

    // Single vertex at the origin with the given loop directions.
    static ModelNet lattice_net(const std::vector<IntVec3>& directions);
};

// True iff the closed segments are disjoint or meet exactly in one point
// that is an endpoint of both. All arithmetic exact.
bool segments_essentially_disjoint(const Segment& s1, const Segment& s2);

struct Fragment {
    std::vector<Rat3> nodes;
    std::vector<Segment> segments;
};

// All node and edge translates whose anchor cell lies in [lo, hi]^3 per axis.
Fragment generate_fragment(const ModelNet& m, IntVec3 lo, IntVec3 hi);

// Number of connected components of a fragment, joining segments that share
// endpoints (used as an independent oracle for quotient-side multiplicities).
int fragment_component_count(const Fragment& f);

struct PropernessReport {
    bool proper = true;
    // Node collision: two vertex ids with equal positions.
    std::optional<std::pair<VertexId, VertexId>> node_collision;
    // First offending pair: motif edge indices and the cell shift of the second.
    std::optional<std::tuple<int, int, IntVec3>> crossing;
};

// Decides properness by the finite pair scan over shifts |k_i| <= 2*depth+1.
// Node coincidences are detected first and reported separately.
PropernessReport is_proper(const ModelNet& m);

// Verdict only; pair scan parallelized across the shift window.
bool is_proper_parallel(const ModelNet& m);

// One diagrammatic piece of a wrapped edge, clipped to the closed unit cube.
struct KnotPiece {
    Rat3 a, b;
};

struct KnotEdge {
    int id = 0;
    IntVec3 label;  // homology class of the closed path
    std::vector<KnotPiece> pieces;
    int wrap_count = 0;  // integer-plane crossings of the ambient edge
};

// A finite net on the flat 3-torus: nodes in [0,1)^3, edges as piece chains.
struct GraphKnot {
    std::vector<Rat3> nodes;
    std::vector<KnotEdge> edges;
};

// Cuts each motif edge at integer planes and translates the pieces into the
// unit cube. Requires a proper net.
GraphKnot linear_graph_knot(const ModelNet& m);

std::string export_knot_json(const GraphKnot& k);
GraphKnot import_knot_json(const std::string& text);
// 'v' and 'l' records only; coordinates rendered to 12 decimal digits.
std::string export_knot_obj(const GraphKnot& k);

std::string export_knot(const GraphKnot& k, const std::string& format);

}  // namespace nets
