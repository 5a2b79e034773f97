#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nets/intvec.hpp"
#include "nets/rational.hpp"
#include "nets/snf.hpp"

namespace nets {

using VertexId = int;

// Directed edge of a labelled quotient graph. (v,w,k) and (w,v,-k) denote the
// same undirected edge; storage keeps tail <= head, loops as given.
struct DirectedLabeledEdge {
    VertexId tail = 0;
    VertexId head = 0;
    IntVec3 label;

    friend bool operator==(const DirectedLabeledEdge& a, const DirectedLabeledEdge& b) {
        return a.tail == b.tail && a.head == b.head && a.label == b.label;
    }
    friend bool operator<(const DirectedLabeledEdge& a, const DirectedLabeledEdge& b) {
        if (a.tail != b.tail) return a.tail < b.tail;
        if (a.head != b.head) return a.head < b.head;
        return a.label < b.label;
    }
};

// Finite multigraph with Z^3-labelled directed edges.
class LabeledQuotientGraph {
public:
    LabeledQuotientGraph() = default;
    LabeledQuotientGraph(int vertex_count, std::vector<DirectedLabeledEdge> edges);

    int vertex_count() const { return vertex_count_; }
    const std::vector<DirectedLabeledEdge>& edges() const { return edges_; }
    const std::vector<std::string>& vertex_names() const { return names_; }
    void set_vertex_names(std::vector<std::string> names) { names_ = std::move(names); }
    VertexId vertex_id(const std::string& name) const;

    // Sorted edge list with loop labels sign-canonicalized; basis for equality tests.
    std::vector<DirectedLabeledEdge> canonical_edges() const;
    friend bool operator==(const LabeledQuotientGraph& a, const LabeledQuotientGraph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.canonical_edges() == b.canonical_edges();
    }

private:
    int vertex_count_ = 0;
    std::vector<DirectedLabeledEdge> edges_;
    std::vector<std::string> names_;
};

struct ParsedLqg {
    LabeledQuotientGraph graph;
    std::map<VertexId, Rat3> positions;  // present only when the file has pos lines
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what) : std::runtime_error(what), line(line_) {}
};

// Line-oriented format: 'vertex <name>', 'edge <v> <w> <k1> <k2> <k3>',
// 'pos <v> <x> <y> <z>' with exact rationals, '#' comments.
ParsedLqg parse_lqg(const std::string& text);
std::string format_lqg(const ParsedLqg& p);

// Maximum modulus of the label coordinates.
int64_t depth(const LabeledQuotientGraph& g);

struct BoundsViolation {
    bool loop_bound;  // true: loop count at `vertex` exceeds 7; false: pair multiplicity exceeds 8
    VertexId vertex = 0;
    VertexId other = 0;
    int count = 0;
};

// Depth-1 necessary conditions: at most 7 loops per vertex, at most 8 edges
// per vertex pair. Throws on depth > 1 input.
std::vector<BoundsViolation> check_multiplicity_bounds(const LabeledQuotientGraph& g);

struct IndivisibilityResult {
    bool indivisible = true;
    DirectedLabeledEdge first;
    DirectedLabeledEdge second;
    IntVec3 difference;  // the divisible vector witnessing failure
};

// Necessary condition for a proper embedding: no parallel edge pair whose
// label difference is n*t with n >= 2, and every loop pair spanning a
// primitive rank-2 sublattice.
IndivisibilityResult is_indivisible(const LabeledQuotientGraph& g);

// Re-chooses the cell representative of one vertex: head-side labels gain t,
// tail-side labels lose t, loops unchanged.
LabeledQuotientGraph gauge_shift(const LabeledQuotientGraph& g, VertexId v, IntVec3 t);

// Relabels every edge by z*label. Requires |det z| = 1.
LabeledQuotientGraph change_basis(const LabeledQuotientGraph& g, const IntMat3& z);

struct ComponentInfo {
    std::vector<VertexId> vertices;
    std::vector<IntVec3> voltage_basis;  // gauged non-tree labels
    int rank = 0;
    int64_t multiplicity = 0;  // 0 encodes infinity (rank < 3)

    bool finite_multiplicity() const { return rank == 3; }
};

struct ComponentStructure {
    std::vector<ComponentInfo> components;
    int total_voltage_rank = 0;  // rank of the lattice generated by all voltage lattices
};

// Per multigraph component: spanning-tree gauge, voltage lattice, rank and
// net multiplicity (index in Z^3 when rank 3).
ComponentStructure component_structure(const LabeledQuotientGraph& g);

struct DimensionType {
    int ambient_rank = 3;             // periodicity rank of the model net
    std::vector<int> component_ranks;  // decreasing list of distinct ranks
    bool deficient_span = false;       // total voltage span has rank < 3

    std::string str() const;
};

DimensionType dimension_type(const LabeledQuotientGraph& g);

struct DepthReduction {
    LabeledQuotientGraph graph;
    IntMat3 basis_change;
    int64_t achieved_depth = 0;
    bool certified_minimal = false;  // achieved depth 1 proves minimality
};

// Bounded search over products of signed permutations and elementary shears
// for a relabelling of minimal depth. Matrix entries capped by search_bound.
DepthReduction reduce_depth(const LabeledQuotientGraph& g, int64_t search_bound = 3);

}  // namespace nets
