#include "nets/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nets {

Segment ModelNet::edge_segment(const DirectedLabeledEdge& e, IntVec3 shift) const {
    Rat3 s = Rat3::from(shift);
    Rat3 a = positions[e.tail] + s;
    Rat3 b = positions[e.head] + Rat3::from(e.label) + s;
    return {a, b};
}

ModelNet ModelNet::lattice_net(const std::vector<IntVec3>& directions) {
    std::vector<DirectedLabeledEdge> edges;
    for (auto d : directions) edges.push_back({0, 0, d});
    ModelNet m;
    m.lqg = LabeledQuotientGraph(1, std::move(edges));
    m.positions = {Rat3{Rat(0), Rat(0), Rat(0)}};
    return m;
}

namespace {

bool bbox_disjoint(const Segment& s1, const Segment& s2) {
    for (int i = 0; i < 3; ++i) {
        Rat lo1 = std::min(s1.a[i], s1.b[i]), hi1 = std::max(s1.a[i], s1.b[i]);
        Rat lo2 = std::min(s2.a[i], s2.b[i]), hi2 = std::max(s2.a[i], s2.b[i]);
        if (hi1 < lo2 || hi2 < lo1) return true;
    }
    return false;
}

}  // namespace

bool segments_essentially_disjoint(const Segment& s1, const Segment& s2) {
    if (bbox_disjoint(s1, s2)) return true;

    Rat3 d1 = s1.b - s1.a;
    Rat3 d2 = s2.b - s2.a;
    Rat3 r = s2.a - s1.a;
    Rat3 n = cross(d1, d2);

    if (!n.is_zero()) {
        if (dot(n, r).sign() != 0) return true;  // skew lines
        // Coplanar, non-parallel: unique line intersection at parameters t, u.
        Rat nn = dot(n, n);
        Rat t = dot(cross(r, d2), n) / nn;
        Rat u = dot(cross(r, d1), n) / nn;
        if (t < Rat(0) || t > Rat(1) || u < Rat(0) || u > Rat(1)) return true;
        bool endpoint1 = (t == Rat(0) || t == Rat(1));
        bool endpoint2 = (u == Rat(0) || u == Rat(1));
        return endpoint1 && endpoint2;
    }

    // Parallel lines.
    if (!cross(r, d1).is_zero()) return true;
    // Collinear: compare parameter intervals along d1.
    Rat len = dot(d1, d1);
    Rat t0 = dot(r, d1) / len;
    Rat t1 = t0 + dot(d2, d1) / len;
    if (t0 > t1) std::swap(t0, t1);
    Rat lo = std::max(Rat(0), t0);
    Rat hi = std::min(Rat(1), t1);
    if (lo > hi) return true;
    return lo == hi;  // single touching point, an endpoint of both
}

Fragment generate_fragment(const ModelNet& m, IntVec3 lo, IntVec3 hi) {
    Fragment f;
    for (int64_t x = lo.x; x <= hi.x; ++x)
        for (int64_t y = lo.y; y <= hi.y; ++y)
            for (int64_t z = lo.z; z <= hi.z; ++z) {
                IntVec3 cell{x, y, z};
                for (const auto& p : m.positions) f.nodes.push_back(p + Rat3::from(cell));
                for (const auto& e : m.lqg.edges()) f.segments.push_back(m.edge_segment(e, cell));
            }
    return f;
}

int fragment_component_count(const Fragment& f) {
    size_t n = f.segments.size();
    if (n == 0) return 0;
    std::vector<int> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = (int)i;
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };

    auto touches = [](const Segment& a, const Segment& b) {
        return a.a == b.a || a.a == b.b || a.b == b.a || a.b == b.b;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (touches(f.segments[i], f.segments[j])) parent[find((int)i)] = find((int)j);

    int count = 0;
    for (size_t i = 0; i < n; ++i)
        if (find((int)i) == (int)i) ++count;
    return count;
}

namespace {

// Shift windows for the properness pair scan: segments anchored within
// |k_i| <= 2*depth+1 of each other are the only candidates for contact.
std::vector<IntVec3> shift_window(int64_t w, bool half) {
    std::vector<IntVec3> out;
    for (int64_t x = -w; x <= w; ++x)
        for (int64_t y = -w; y <= w; ++y)
            for (int64_t z = -w; z <= w; ++z) {
                IntVec3 k{x, y, z};
                if (half && !(IntVec3{0, 0, 0} < k)) continue;
                out.push_back(k);
            }
    return out;
}

}  // namespace

PropernessReport is_proper(const ModelNet& m) {
    PropernessReport rep;
    int nv = m.lqg.vertex_count();
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (m.positions[i] == m.positions[j]) {
                rep.proper = false;
                rep.node_collision = {i, j};
                return rep;
            }

    const auto& edges = m.lqg.edges();
    int64_t w = 2 * depth(m.lqg) + 1;
    auto full = shift_window(w, false);
    auto half = shift_window(w, true);

    for (size_t i = 0; i < edges.size(); ++i) {
        Segment si = m.edge_segment(edges[i]);
        for (size_t j = i; j < edges.size(); ++j) {
            const auto& ks = (i == j) ? half : full;
            for (const auto& k : ks) {
                Segment sj = m.edge_segment(edges[j], k);
                if (!segments_essentially_disjoint(si, sj)) {
                    rep.proper = false;
                    rep.crossing = {(int)i, (int)j, k};
                    return rep;
                }
            }
        }
    }
    return rep;
}

bool is_proper_parallel(const ModelNet& m) {
    int nv = m.lqg.vertex_count();
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (m.positions[i] == m.positions[j]) return false;

    const auto& edges = m.lqg.edges();
    int ne = (int)edges.size();
    int64_t w = 2 * depth(m.lqg) + 1;
    auto full = shift_window(w, false);
    auto half = shift_window(w, true);

    std::vector<Segment> base;
    base.reserve(ne);
    for (const auto& e : edges) base.push_back(m.edge_segment(e));

    std::atomic<bool> crossing{false};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < ne; ++i) {
        if (crossing.load(std::memory_order_relaxed)) continue;
        for (int j = i; j < ne && !crossing.load(std::memory_order_relaxed); ++j) {
            const auto& ks = (i == j) ? half : full;
            for (const auto& k : ks)
                if (!segments_essentially_disjoint(base[i], m.edge_segment(edges[j], k))) {
                    crossing.store(true, std::memory_order_relaxed);
                    break;
                }
        }
    }
    return !crossing.load();
}

GraphKnot linear_graph_knot(const ModelNet& m) {
    auto rep = is_proper(m);
    if (!rep.proper) throw std::invalid_argument("linear_graph_knot requires a proper net");

    GraphKnot k;
    k.nodes = m.positions;
    const auto& edges = m.lqg.edges();
    for (size_t ei = 0; ei < edges.size(); ++ei) {
        KnotEdge ke;
        ke.id = (int)ei;
        ke.label = edges[ei].label;
        Segment s = m.edge_segment(edges[ei]);
        Rat3 d = s.b - s.a;

        // Cut parameters where the open segment crosses an integer plane.
        std::vector<Rat> cuts{Rat(0), Rat(1)};
        for (int axis = 0; axis < 3; ++axis) {
            if (d[axis].sign() == 0) continue;
            int64_t lo = std::min(s.a[axis], s.b[axis]).floor() + 1;
            Rat mx = std::max(s.a[axis], s.b[axis]);
            int64_t hi = mx.is_integer() ? mx.floor() - 1 : mx.floor();
            for (int64_t c = lo; c <= hi; ++c) {
                Rat t = (Rat(c) - s.a[axis]) / d[axis];
                if (t > Rat(0) && t < Rat(1)) {
                    cuts.push_back(t);
                    ++ke.wrap_count;
                }
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        for (size_t c = 0; c + 1 < cuts.size(); ++c) {
            Rat tm = (cuts[c] + cuts[c + 1]) / Rat(2);
            Rat3 mid = s.a + tm * d;
            IntVec3 cell{mid.x.floor(), mid.y.floor(), mid.z.floor()};
            Rat3 shift = Rat3::from(-cell);
            ke.pieces.push_back({s.a + cuts[c] * d + shift, s.a + cuts[c + 1] * d + shift});
        }
        k.edges.push_back(std::move(ke));
    }
    return k;
}

namespace {

using nlohmann::json;

json rat3_json(const Rat3& p) { return json::array({p.x.str(), p.y.str(), p.z.str()}); }

Rat3 rat3_from_json(const json& j) {
    return {Rat::parse(j.at(0).get<std::string>()), Rat::parse(j.at(1).get<std::string>()),
            Rat::parse(j.at(2).get<std::string>())};
}

}  // namespace

std::string export_knot_json(const GraphKnot& k) {
    json j;
    j["nodes"] = json::array();
    for (const auto& n : k.nodes) j["nodes"].push_back(rat3_json(n));
    j["edges"] = json::array();
    for (const auto& e : k.edges) {
        json je;
        je["id"] = e.id;
        je["label"] = {e.label.x, e.label.y, e.label.z};
        je["pieces"] = json::array();
        for (const auto& p : e.pieces) je["pieces"].push_back(json::array({rat3_json(p.a), rat3_json(p.b)}));
        je["wraps"] = e.wrap_count;
        j["edges"].push_back(std::move(je));
    }
    return j.dump(2) + "\n";
}

GraphKnot import_knot_json(const std::string& text) {
    json j = json::parse(text);
    GraphKnot k;
    for (const auto& n : j.at("nodes")) k.nodes.push_back(rat3_from_json(n));
    for (const auto& je : j.at("edges")) {
        KnotEdge e;
        e.id = je.at("id").get<int>();
        e.label = {je.at("label").at(0).get<int64_t>(), je.at("label").at(1).get<int64_t>(),
                   je.at("label").at(2).get<int64_t>()};
        for (const auto& jp : je.at("pieces")) e.pieces.push_back({rat3_from_json(jp.at(0)), rat3_from_json(jp.at(1))});
        e.wrap_count = je.value("wraps", 0);
        k.edges.push_back(std::move(e));
    }
    return k;
}

std::string export_knot_obj(const GraphKnot& k) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(12);
    auto emit_v = [&](const Rat3& p) {
        os << "v " << p.x.to_double() << " " << p.y.to_double() << " " << p.z.to_double() << "\n";
    };
    int index = 0;
    for (const auto& n : k.nodes) {
        emit_v(n);
        ++index;
    }
    for (const auto& e : k.edges)
        for (const auto& p : e.pieces) {
            emit_v(p.a);
            emit_v(p.b);
            os << "l " << index + 1 << " " << index + 2 << "\n";
            index += 2;
        }
    return os.str();
}

std::string export_knot(const GraphKnot& k, const std::string& format) {
    if (format == "json") return export_knot_json(k);
    if (format == "obj") return export_knot_obj(k);
    throw std::invalid_argument("unknown knot format: " + format);
}

}  // namespace nets
