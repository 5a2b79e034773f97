#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "nets/enumeration.hpp"
#include "nets/geometry.hpp"

using namespace nets;

namespace {

uint64_t rng_state = 0xc0ffee123456789ull;
uint64_t next_rand() {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 7;
    rng_state ^= rng_state << 17;
    return rng_state;
}

Rat3 point(int64_t x, int64_t y, int64_t z, int64_t q = 1) { return {Rat(x, q), Rat(y, q), Rat(z, q)}; }

// All-pairs scan over a full window fragment; independent of the shift-window
// argument used by is_proper.
bool proper_bruteforce(const ModelNet& m, int64_t w) {
    for (size_t i = 0; i < m.positions.size(); ++i)
        for (size_t j = i + 1; j < m.positions.size(); ++j)
            if (m.positions[i] == m.positions[j]) return false;
    auto frag = generate_fragment(m, {-w, -w, -w}, {w, w, w});
    for (size_t i = 0; i < frag.segments.size(); ++i)
        for (size_t j = i + 1; j < frag.segments.size(); ++j)
            if (!segments_essentially_disjoint(frag.segments[i], frag.segments[j])) return false;
    return true;
}

}  // namespace

TEST_CASE("essential disjointness") {
    // Shared endpoint.
    CHECK(segments_essentially_disjoint({point(0, 0, 0), point(1, 0, 0)}, {point(1, 0, 0), point(1, 1, 0)}));
    // Interior crossing at (1/2,1/2,0).
    CHECK_FALSE(
        segments_essentially_disjoint({point(0, 0, 0), point(1, 1, 0)}, {point(1, 0, 0), point(0, 1, 0)}));
    // Collinear overlap.
    CHECK_FALSE(
        segments_essentially_disjoint({point(0, 0, 0), point(2, 0, 0)}, {point(1, 0, 0), point(3, 0, 0)}));
    // Collinear touching only at a shared endpoint.
    CHECK(segments_essentially_disjoint({point(0, 0, 0), point(1, 0, 0)}, {point(1, 0, 0), point(2, 0, 0)}));
    // Skew.
    CHECK(segments_essentially_disjoint({point(0, 0, 0), point(1, 0, 0)}, {point(0, 0, 1), point(0, 1, 1)}));
    // Endpoint of one interior to the other.
    CHECK_FALSE(
        segments_essentially_disjoint({point(0, 0, 0), point(2, 0, 0)}, {point(1, 0, 0), point(1, 1, 0)}));
    // Identical segments.
    CHECK_FALSE(
        segments_essentially_disjoint({point(0, 0, 0), point(1, 0, 0)}, {point(0, 0, 0), point(1, 0, 0)}));
}

TEST_CASE("fragments") {
    auto pcu = ModelNet::lattice_net({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto f = generate_fragment(pcu, {0, 0, 0}, {0, 0, 0});
    CHECK(f.nodes.size() == 1);
    CHECK(f.segments.size() == 3);

    auto fff = ModelNet::lattice_net({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    auto f2 = generate_fragment(fff, {0, 0, 0}, {1, 1, 1});
    CHECK(fragment_component_count(f2) == 2);

    auto empty = generate_fragment(pcu, {1, 1, 1}, {0, 0, 0});
    CHECK(empty.nodes.empty());
}

TEST_CASE("properness") {
    auto pcu = ModelNet::lattice_net({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(is_proper(pcu).proper);

    auto opposed = ModelNet::lattice_net({{0, 0, 1}, {0, 0, -1}});
    auto rep = is_proper(opposed);
    CHECK_FALSE(rep.proper);
    CHECK(rep.crossing.has_value());

    auto two = parse_lqg(R"(
vertex v1
vertex v2
edge v1 v1 0 0 1
edge v1 v1 1 1 1
edge v2 v2 0 1 0
edge v2 v2 0 0 1
edge v1 v2 0 0 0
edge v1 v2 0 -1 -1
)");
    ModelNet m;
    m.lqg = two.graph;
    m.positions = {point(0, 0, 0), point(1, 2, 9, 12)};
    CHECK(is_proper(m).proper);

    // The x = y locus carries crossings of the vertical mobile loop with the
    // diagonal loop; (1/4,1/4,3/4) sits exactly on it.
    m.positions[1] = point(1, 1, 3, 4);
    CHECK_FALSE(is_proper(m).proper);

    m.positions[1] = point(0, 0, 0);
    auto collide = is_proper(m);
    CHECK_FALSE(collide.proper);
    CHECK(collide.node_collision.has_value());
}

TEST_CASE("disjointness is symmetric and affine invariant") {
    auto random_point = [&] {
        return point((int64_t)(next_rand() % 9) - 4, (int64_t)(next_rand() % 9) - 4,
                     (int64_t)(next_rand() % 9) - 4, 1 + (int64_t)(next_rand() % 3));
    };
    auto perms = signed_permutation_matrices();
    auto apply = [](const IntMat3& z, const Rat3& p) {
        return Rat3{Rat(z.m[0][0]) * p.x + Rat(z.m[0][1]) * p.y + Rat(z.m[0][2]) * p.z,
                    Rat(z.m[1][0]) * p.x + Rat(z.m[1][1]) * p.y + Rat(z.m[1][2]) * p.z,
                    Rat(z.m[2][0]) * p.x + Rat(z.m[2][1]) * p.y + Rat(z.m[2][2]) * p.z};
    };
    int degenerate = 0;
    for (int trial = 0; trial < 500; ++trial) {
        Segment s1{random_point(), random_point()};
        Segment s2{random_point(), random_point()};
        if (s1.a == s1.b || s2.a == s2.b) {
            ++degenerate;
            continue;
        }
        bool base = segments_essentially_disjoint(s1, s2);
        CHECK(segments_essentially_disjoint(s2, s1) == base);
        // Endpoint order is immaterial.
        CHECK(segments_essentially_disjoint({s1.b, s1.a}, s2) == base);
        // Unimodular images preserve incidence.
        const auto& z = perms[next_rand() % 48];
        Segment t1{apply(z, s1.a), apply(z, s1.b)};
        Segment t2{apply(z, s2.a), apply(z, s2.b)};
        CHECK(segments_essentially_disjoint(t1, t2) == base);
        // Common translation preserves incidence.
        Rat3 shift = random_point();
        CHECK(segments_essentially_disjoint({s1.a + shift, s1.b + shift},
                                            {s2.a + shift, s2.b + shift}) == base);
    }
    CHECK(degenerate < 100);
}

TEST_CASE("properness is translation invariant") {
    auto words = {"ax ay az d1", "ax gx gy d1", "fx gx"};
    for (const char* w : words) {
        auto net = ModelNet::lattice_net(EdgeWord::parse(w).directions());
        bool base = is_proper(net).proper;
        for (int trial = 0; trial < 5; ++trial) {
            Rat3 shift{Rat((int64_t)(next_rand() % 7), 8), Rat((int64_t)(next_rand() % 7), 8),
                       Rat((int64_t)(next_rand() % 7), 8)};
            ModelNet shifted = net;
            for (auto& p : shifted.positions) p = mod1(p + shift);
            CHECK(is_proper(shifted).proper == base);
        }
    }
}

TEST_CASE("properness agrees with the brute-force fragment scan") {
    // Sampled lattice words, including improper ones.
    for (uint16_t mask : {0x7, 0x240, 0x1c0, 0x248, 0x9, 0x1ff, 0x38, 0x207}) {
        auto net = ModelNet::lattice_net(EdgeWord{mask}.directions());
        CHECK(is_proper(net).proper == proper_bruteforce(net, 3));
    }
}

TEST_CASE("divisible label pairs never embed properly") {
    int tried = 0;
    for (int trial = 0; tried < 100; ++trial) {
        IntVec3 t{(int64_t)(next_rand() % 3) - 1, (int64_t)(next_rand() % 3) - 1,
                  (int64_t)(next_rand() % 3) - 1};
        if (t.is_zero()) continue;
        IntVec3 k{(int64_t)(next_rand() % 3) - 1, (int64_t)(next_rand() % 3) - 1,
                  (int64_t)(next_rand() % 3) - 1};
        IntVec3 l = k - 2 * t;
        std::vector<DirectedLabeledEdge> edges = {{0, 1, k}, {0, 1, l}};
        LabeledQuotientGraph g(2, edges);
        if (is_indivisible(g).indivisible) continue;
        ++tried;
        ModelNet m;
        m.lqg = g;
        m.positions = {point(0, 0, 0), point((int64_t)(next_rand() % 13) + 1, (int64_t)(next_rand() % 13) + 1,
                                              (int64_t)(next_rand() % 13) + 1, 17)};
        CHECK_FALSE(is_proper(m).proper);
    }
    CHECK(tried == 100);
}

TEST_CASE("graph knot wrapping") {
    // Node at the cell centre: every axial edge splits into two pieces.
    ModelNet centred;
    centred.lqg = LabeledQuotientGraph(1, {{0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}, {0, 0, {0, 0, 1}}});
    centred.positions = {point(1, 1, 1, 2)};
    auto k1 = linear_graph_knot(centred);
    REQUIRE(k1.edges.size() == 3);
    for (const auto& e : k1.edges) CHECK(e.pieces.size() == 2);

    // Node at the origin: one axial piece each.
    auto k2 = linear_graph_knot(ModelNet::lattice_net({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    for (const auto& e : k2.edges) CHECK(e.pieces.size() == 1);

    // Centred diagonal edge leaves through the corner: three wraps, two pieces.
    ModelNet bcu;
    bcu.lqg = LabeledQuotientGraph(
        1, {{0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}, {0, 0, {0, 0, 1}}, {0, 0, {1, 1, 1}}});
    bcu.positions = {point(1, 1, 1, 2)};
    auto k3 = linear_graph_knot(bcu);
    const auto& diag = k3.edges[3];
    CHECK(diag.label == IntVec3{1, 1, 1});
    CHECK(diag.wrap_count == 3);
    CHECK(diag.pieces.size() == 2);
}

TEST_CASE("knot pieces concatenate to the label modulo the lattice") {
    for (const char* w : {"ax ay az", "ax ay az d1", "ax gx gy d1", "ax ay az gx gy gz d1"}) {
        ModelNet net;
        net.lqg = LabeledQuotientGraph(1, [&] {
            std::vector<DirectedLabeledEdge> edges;
            for (auto d : EdgeWord::parse(w).directions()) edges.push_back({0, 0, d});
            return edges;
        }());
        net.positions = {point(1, 2, 3, 5)};
        auto k = linear_graph_knot(net);
        for (const auto& e : k.edges) {
            Rat3 sum{Rat(0), Rat(0), Rat(0)};
            for (const auto& p : e.pieces) sum = sum + (p.b - p.a);
            for (int i = 0; i < 3; ++i) {
                Rat diff = sum[i] - Rat(e.label[i]);
                CHECK(diff.is_integer());
            }
            CHECK((int)e.pieces.size() >= 1);
            CHECK((int)e.pieces.size() <= 4);
        }
    }
}

TEST_CASE("knot export round trip and obj shape") {
    ModelNet bcu;
    bcu.lqg = LabeledQuotientGraph(
        1, {{0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}, {0, 0, {0, 0, 1}}, {0, 0, {1, 1, 1}}});
    bcu.positions = {point(1, 1, 1, 2)};
    auto k = linear_graph_knot(bcu);

    auto json_text = export_knot(k, "json");
    auto back = import_knot_json(json_text);
    REQUIRE(back.nodes.size() == k.nodes.size());
    REQUIRE(back.edges.size() == k.edges.size());
    CHECK(back.nodes[0] == k.nodes[0]);
    for (size_t i = 0; i < k.edges.size(); ++i) {
        CHECK(back.edges[i].label == k.edges[i].label);
        REQUIRE(back.edges[i].pieces.size() == k.edges[i].pieces.size());
        for (size_t j = 0; j < k.edges[i].pieces.size(); ++j) {
            CHECK(back.edges[i].pieces[j].a == k.edges[i].pieces[j].a);
            CHECK(back.edges[i].pieces[j].b == k.edges[i].pieces[j].b);
        }
    }

    auto obj = export_knot(k, "obj");
    size_t pieces = 0;
    for (const auto& e : k.edges) pieces += e.pieces.size();
    size_t vlines = 0, llines = 0;
    for (size_t pos = 0; pos < obj.size();) {
        auto eol = obj.find('\n', pos);
        if (obj[pos] == 'v') ++vlines;
        if (obj[pos] == 'l') ++llines;
        pos = eol + 1;
    }
    CHECK(vlines == k.nodes.size() + 2 * pieces);
    CHECK(llines == pieces);

    CHECK_THROWS(export_knot(k, "svg"));
}

TEST_CASE("pcu knot export content") {
    auto k = linear_graph_knot(ModelNet::lattice_net({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(k.nodes.size() == 1);
    CHECK(k.edges.size() == 3);
    auto back = import_knot_json(export_knot(k, "json"));
    std::set<IntVec3> labels;
    for (const auto& e : back.edges) labels.insert(e.label);
    CHECK(labels == std::set<IntVec3>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(back.nodes[0] == (Rat3{Rat(0), Rat(0), Rat(0)}));
}

TEST_CASE("improper nets are rejected by the knot map") {
    auto opposed = ModelNet::lattice_net({{0, 0, 1}, {0, 0, -1}});
    CHECK_THROWS(linear_graph_knot(opposed));
}
