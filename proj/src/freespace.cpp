#include "nets/freespace.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nets {

namespace {

// Exact segment predicates on integer-scaled coordinates. Entries stay far
// below the int64 overflow bound for the scales used here (<= ~2^13).
struct ISeg {
    IntVec3 a, b;
};

bool iseg_bbox_disjoint(const ISeg& s, const ISeg& t) {
    for (int i = 0; i < 3; ++i) {
        if (std::max(s.a[i], s.b[i]) < std::min(t.a[i], t.b[i])) return true;
        if (std::max(t.a[i], t.b[i]) < std::min(s.a[i], s.b[i])) return true;
    }
    return false;
}

bool isegs_essentially_disjoint(const ISeg& s1, const ISeg& s2) {
    IntVec3 d1 = s1.b - s1.a;
    IntVec3 d2 = s2.b - s2.a;
    IntVec3 r = s2.a - s1.a;
    IntVec3 n = cross(d1, d2);

    if (!n.is_zero()) {
        if (dot(n, r) != 0) return true;  // skew
        int64_t nn = dot(n, n);
        int64_t tn = dot(cross(r, d2), n);
        int64_t un = dot(cross(r, d1), n);
        if (tn < 0 || tn > nn || un < 0 || un > nn) return true;
        bool e1 = (tn == 0 || tn == nn);
        bool e2 = (un == 0 || un == nn);
        return e1 && e2;
    }

    if (!cross(r, d1).is_zero()) return true;
    // Collinear: parameter interval overlap along d1, scaled by len = d1.d1.
    int64_t len = dot(d1, d1);
    int64_t t0 = dot(r, d1);
    int64_t t1 = t0 + dot(d2, d1);
    if (t0 > t1) std::swap(t0, t1);
    int64_t lo = std::max<int64_t>(0, t0);
    int64_t hi = std::min(len, t1);
    if (lo > hi) return true;
    return lo == hi;
}

struct ScanSetup {
    LabeledQuotientGraph graph;
    VertexId mobile = 0;
    int resolution = 0;
    int64_t scale = 1;  // multiple of 2*resolution and of all fixed denominators
    std::vector<IntVec3> fixed_scaled;  // per vertex; mobile entry unused
    std::vector<int> mobile_edges;
    int64_t window = 1;  // shift bound 2*depth+1, in cell units

    ModelNet rational_net;  // fixed positions for the Rat-based reference path
};

ScanSetup prepare(const LabeledQuotientGraph& g, const std::map<VertexId, Rat3>& fixed, VertexId mobile,
                  int resolution, bool& trivial_mobile) {
    if (depth(g) > 1) throw std::invalid_argument("free-region scan requires depth <= 1");
    if (mobile < 0 || mobile >= g.vertex_count()) throw std::invalid_argument("no such vertex");

    ScanSetup s;
    s.graph = g;
    s.mobile = mobile;
    s.resolution = resolution;
    s.window = 2 * depth(g) + 1;

    s.rational_net.lqg = g;
    s.rational_net.positions.assign(g.vertex_count(), Rat3{});
    s.scale = 2 * resolution;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (v == mobile) continue;
        auto it = fixed.find(v);
        if (it == fixed.end()) throw std::invalid_argument("missing fixed position for a vertex");
        s.rational_net.positions[v] = it->second;
        for (int i = 0; i < 3; ++i) s.scale = std::lcm(s.scale, (int64_t)it->second[i].den());
    }
    s.fixed_scaled.assign(g.vertex_count(), IntVec3{});
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (v == mobile) continue;
        const Rat3& p = s.rational_net.positions[v];
        for (int i = 0; i < 3; ++i) s.fixed_scaled[v][i] = p[i].num() * (s.scale / p[i].den());
    }

    const auto& edges = g.edges();
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].tail == mobile || edges[i].head == mobile) s.mobile_edges.push_back((int)i);
    trivial_mobile = s.mobile_edges.empty();

    // Fixed-fixed pairs never change across cells; an improper skeleton
    // makes every placement inadmissible. Reindex over the fixed vertices.
    std::vector<int> remap(g.vertex_count(), -1);
    ModelNet fixed_only;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (v != mobile) {
            remap[v] = (int)fixed_only.positions.size();
            fixed_only.positions.push_back(s.rational_net.positions[v]);
        }
    std::vector<DirectedLabeledEdge> fe;
    for (const auto& e : edges)
        if (e.tail != mobile && e.head != mobile) fe.push_back({remap[e.tail], remap[e.head], e.label});
    fixed_only.lqg = LabeledQuotientGraph((int)fixed_only.positions.size(), fe);
    if (!fixed_only.positions.empty() && !is_proper(fixed_only).proper)
        throw std::invalid_argument("fixed skeleton is already improper");
    return s;
}

// Admissibility of the mobile node at an integer-scaled point.
bool point_admissible_scaled(const ScanSetup& s, IntVec3 place) {
    for (int v = 0; v < s.graph.vertex_count(); ++v)
        if (v != s.mobile && s.fixed_scaled[v] == place) return false;

    const auto& edges = s.graph.edges();
    auto endpoint = [&](VertexId v) { return v == s.mobile ? place : s.fixed_scaled[v]; };
    auto segment_at = [&](const DirectedLabeledEdge& e, IntVec3 cell) {
        IntVec3 shift = s.scale * cell;
        return ISeg{endpoint(e.tail) + shift, endpoint(e.head) + s.scale * e.label + shift};
    };

    int64_t w = s.window;
    for (int ei : s.mobile_edges) {
        ISeg a = segment_at(edges[ei], {0, 0, 0});
        for (size_t j = 0; j < edges.size(); ++j) {
            ISeg base = segment_at(edges[j], {0, 0, 0});
            // Shift range per axis from bounding boxes.
            int64_t klo[3], khi[3];
            auto floor_div = [](int64_t a, int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
            auto ceil_div = [](int64_t a, int64_t b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); };
            for (int ax = 0; ax < 3; ++ax) {
                int64_t alo = std::min(a.a[ax], a.b[ax]), ahi = std::max(a.a[ax], a.b[ax]);
                int64_t blo = std::min(base.a[ax], base.b[ax]), bhi = std::max(base.a[ax], base.b[ax]);
                // Need alo <= bhi + k*scale and blo + k*scale <= ahi.
                klo[ax] = std::max(-w, ceil_div(alo - bhi, s.scale));
                khi[ax] = std::min(w, floor_div(ahi - blo, s.scale));
            }
            bool same = (int)j == ei;
            for (int64_t kx = klo[0]; kx <= khi[0]; ++kx)
                for (int64_t ky = klo[1]; ky <= khi[1]; ++ky)
                    for (int64_t kz = klo[2]; kz <= khi[2]; ++kz) {
                        IntVec3 k{kx, ky, kz};
                        if (same && k.is_zero()) continue;
                        ISeg b = segment_at(edges[j], k);
                        if (iseg_bbox_disjoint(a, b)) continue;
                        if (!isegs_essentially_disjoint(a, b)) return false;
                    }
        }
    }
    return true;
}

// Rat-based evaluation at an arbitrary rational point (reference path).
bool point_admissible_rational(const ScanSetup& s, const Rat3& place) {
    ModelNet net = s.rational_net;
    net.positions[s.mobile] = place;
    return is_proper(net).proper;
}

FreeRegionScan run_scan(const LabeledQuotientGraph& g, const std::map<VertexId, Rat3>& fixed, VertexId mobile,
                        int resolution, bool parallel, bool rational_reference) {
    if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
    FreeRegionScan scan;
    scan.resolution = resolution;
    scan.mobile = mobile;
    int64_t cells = (int64_t)resolution * resolution * resolution;
    scan.admissible.assign(cells, 0);

    ScanSetup setup = prepare(g, fixed, mobile, resolution, scan.trivial_mobile);
    if (scan.trivial_mobile) {
        std::fill(scan.admissible.begin(), scan.admissible.end(), 1);
        count_components(scan);
        return scan;
    }
    for (auto& f : scan.face_open) f.assign(cells, 0);

    int r = resolution;
    int64_t half_step = setup.scale / (2 * r);  // half a cell, in scaled units

    auto evaluate = [&](IntVec3 scaled_point) {
        if (!rational_reference) return point_admissible_scaled(setup, scaled_point);
        Rat3 p{Rat(scaled_point.x, setup.scale), Rat(scaled_point.y, setup.scale),
               Rat(scaled_point.z, setup.scale)};
        return point_admissible_rational(setup, p);
    };

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
    for (int64_t idx = 0; idx < cells; ++idx) {
        int64_t x = idx / (r * r), y = (idx / r) % r, z = idx % r;
        IntVec3 center{(2 * x + 1) * half_step, (2 * y + 1) * half_step, (2 * z + 1) * half_step};
        scan.admissible[idx] = evaluate(center) ? 1 : 0;
    }
    (void)parallel;

    // Face centers gate adjacency; only faces between admissible cells matter.
    // Wrap faces stay closed: the node representative jumps by a lattice
    // vector there, which is not a continuous deformation of the net.
    for (int axis = 0; axis < 3; ++axis) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
        for (int64_t idx = 0; idx < cells; ++idx) {
            int64_t c[3] = {idx / (r * r), (idx / r) % r, idx % r};
            if (c[axis] == r - 1) continue;
            int64_t n[3] = {c[0], c[1], c[2]};
            n[axis] += 1;
            int64_t nidx = (n[0] * r + n[1]) * r + n[2];
            if (!scan.admissible[idx] || !scan.admissible[nidx]) continue;
            IntVec3 p{(2 * c[0] + 1) * half_step, (2 * c[1] + 1) * half_step, (2 * c[2] + 1) * half_step};
            p[axis] = (2 * c[axis] + 2) * half_step;
            scan.face_open[axis][idx] = evaluate(p) ? 1 : 0;
        }
    }

    count_components(scan);
    return scan;
}

}  // namespace

FreeRegionScan scan_free_region(const LabeledQuotientGraph& g, const std::map<VertexId, Rat3>& fixed,
                                VertexId mobile, int resolution) {
    return run_scan(g, fixed, mobile, resolution, true, false);
}

FreeRegionScan scan_free_region_serial(const LabeledQuotientGraph& g, const std::map<VertexId, Rat3>& fixed,
                                       VertexId mobile, int resolution) {
    return run_scan(g, fixed, mobile, resolution, false, true);
}

void count_components(FreeRegionScan& scan) {
    int r = scan.resolution;
    int64_t cells = (int64_t)r * r * r;
    std::vector<int> parent(cells);
    for (int64_t i = 0; i < cells; ++i) parent[i] = (int)i;
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };

    bool gated = !scan.face_open[0].empty();
    auto join = [&](int64_t a, int64_t b, int axis) {
        if (!scan.admissible[a] || !scan.admissible[b]) return;
        if (gated && !scan.face_open[axis][a]) return;
        parent[find((int)a)] = find((int)b);
    };

    for (int64_t x = 0; x < r; ++x)
        for (int64_t y = 0; y < r; ++y)
            for (int64_t z = 0; z < r; ++z) {
                int64_t idx = (x * r + y) * r + z;
                if (!scan.admissible[idx]) continue;
                join(idx, (((x + 1) % r) * r + y) * r + z, 0);
                join(idx, (x * r + (y + 1) % r) * r + z, 1);
                join(idx, (x * r + y) * r + (z + 1) % r, 2);
            }

    scan.component.assign(cells, -1);
    scan.component_count = 0;
    scan.representatives.clear();
    std::vector<int> root_label(cells, -1);
    for (int64_t x = 0; x < r; ++x)
        for (int64_t y = 0; y < r; ++y)
            for (int64_t z = 0; z < r; ++z) {
                int64_t idx = (x * r + y) * r + z;
                if (!scan.admissible[idx]) continue;
                int root = find((int)idx);
                if (root_label[root] == -1) {
                    root_label[root] = scan.component_count++;
                    scan.representatives.push_back({x, y, z});
                }
                scan.component[idx] = root_label[root];
            }
}

int classify_representative(const FreeRegionScan& scan, const Rat3& point) {
    int r = scan.resolution;
    auto cell_of = [&](Rat v) {
        int64_t c = (Rat(r) * v).floor();
        if (c < 0 || c >= r) throw std::invalid_argument("point outside the unit cell");
        return c;
    };
    IntVec3 cell{cell_of(point.x), cell_of(point.y), cell_of(point.z)};
    int idx = scan.cell_index(cell);
    if (!scan.admissible[idx]) throw std::invalid_argument("point lies in an inadmissible cell");
    return scan.component[idx];
}

std::string free_region_json(const FreeRegionScan& scan) {
    nlohmann::json j;
    j["resolution"] = scan.resolution;
    j["component_count"] = scan.component_count;
    auto reps = nlohmann::json::array();
    for (const auto& c : scan.representatives) reps.push_back({c.x, c.y, c.z});
    j["representatives"] = std::move(reps);

    // Run-length encoding of the admissibility grid in x-major order.
    auto rle = [&](auto value) {
        auto runs = nlohmann::json::array();
        int64_t cells = (int64_t)scan.resolution * scan.resolution * scan.resolution;
        int64_t start = 0;
        for (int64_t i = 1; i <= cells; ++i) {
            if (i == cells || value(i) != value(start)) {
                runs.push_back({value(start), i - start});
                start = i;
            }
        }
        return runs;
    };
    j["admissible_rle"] = rle([&](int64_t i) { return (int)scan.admissible[i]; });
    j["component_rle"] = rle([&](int64_t i) { return scan.component[i]; });
    return j.dump() + "\n";
}

}  // namespace nets
