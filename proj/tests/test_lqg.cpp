#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nets/lqg.hpp"

using namespace nets;

namespace {

uint64_t rng_state = 0x9e3779b97f4a7c15ull;
uint64_t next_rand() {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 7;
    rng_state ^= rng_state << 17;
    return rng_state;
}

IntMat3 random_unimodular(int moves) {
    auto perms = signed_permutation_matrices();
    auto shears = elementary_shears();
    IntMat3 z = perms[next_rand() % 48];
    for (int i = 0; i < moves; ++i) z = shears[next_rand() % 12] * z;
    return z;
}

const char* kExampleTwoVertex = R"(
vertex v1
vertex v2
edge v1 v1 0 0 1
edge v1 v1 1 1 1
edge v2 v2 0 1 0
edge v2 v2 0 0 1
edge v1 v2 0 0 0
edge v1 v2 0 -1 -1
)";

LabeledQuotientGraph pcu() {
    return LabeledQuotientGraph(1, {{0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}, {0, 0, {0, 0, 1}}});
}

}  // namespace

TEST_CASE("parse: canonical pcu file") {
    auto p = parse_lqg("vertex v1\nedge v1 v1 1 0 0\nedge v1 v1 0 1 0\nedge v1 v1 0 0 1\n");
    CHECK(p.graph.vertex_count() == 1);
    CHECK(p.graph.edges().size() == 3);
    CHECK(p.positions.empty());
}

TEST_CASE("parse: two-vertex example has six edges") {
    auto p = parse_lqg(kExampleTwoVertex);
    CHECK(p.graph.vertex_count() == 2);
    CHECK(p.graph.edges().size() == 6);
}

TEST_CASE("parse: degenerate zero-label loop is an error") {
    CHECK_THROWS_AS(parse_lqg("vertex v1\nedge v1 v1 0 0 0\n"), ParseError);
    try {
        parse_lqg("vertex v1\n# fine\nedge v1 v1 0 0 0\n");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("parse: duplicates, unknown vertices, bad positions") {
    CHECK_THROWS_AS(parse_lqg("vertex a\nedge a a 0 0 1\nedge a a 0 0 -1\n"), ParseError);
    CHECK_THROWS_AS(parse_lqg("vertex a\nedge a b 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_lqg("vertex a\npos a 1 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_lqg("vertex a\npos a 1/0 0 0\n"), ParseError);
    auto p = parse_lqg("vertex a\nvertex b\nedge a b 0 0 0\nedge a b 1 0 0\npos a 0 0 0\npos b 1/4 2/4 3/4\n");
    CHECK(p.positions.at(1).y == Rat(1, 2));
}

TEST_CASE("parse/format round trip") {
    auto p = parse_lqg(kExampleTwoVertex);
    auto q = parse_lqg(format_lqg(p));
    CHECK(p.graph == q.graph);
}

TEST_CASE("depth") {
    CHECK(depth(pcu()) == 1);
    CHECK(depth(parse_lqg(kExampleTwoVertex).graph) == 1);
    LabeledQuotientGraph g(1, {{0, 0, {0, 0, 2}}});
    CHECK(depth(g) == 2);
}

TEST_CASE("multiplicity bounds") {
    // Seven loops pass; the bound is proven only for depth 1.
    LabeledQuotientGraph seven(1, {{0, 0, {1, 0, 0}},
                                   {0, 0, {0, 1, 0}},
                                   {0, 0, {0, 0, 1}},
                                   {0, 0, {0, 1, -1}},
                                   {0, 0, {1, 0, -1}},
                                   {0, 0, {1, -1, 0}},
                                   {0, 0, {1, 1, 1}}});
    CHECK(check_multiplicity_bounds(seven).empty());

    LabeledQuotientGraph eight(1, {{0, 0, {1, 0, 0}},
                                   {0, 0, {0, 1, 0}},
                                   {0, 0, {0, 0, 1}},
                                   {0, 0, {0, 1, 1}},
                                   {0, 0, {1, 0, 1}},
                                   {0, 0, {1, 1, 0}},
                                   {0, 0, {1, 1, 1}},
                                   {0, 0, {0, 1, -1}}});
    auto v = check_multiplicity_bounds(eight);
    REQUIRE(v.size() == 1);
    CHECK(v[0].loop_bound);
    CHECK(v[0].count == 8);

    // H(0,8,0): eight connecting edges, one per residue class mod 2.
    std::vector<DirectedLabeledEdge> links;
    for (IntVec3 l : {IntVec3{0, 0, 0}, IntVec3{1, 0, 0}, IntVec3{0, 1, 0}, IntVec3{0, 0, 1},
                      IntVec3{1, 1, 0}, IntVec3{1, 0, 1}, IntVec3{0, 1, 1}, IntVec3{1, 1, 1}})
        links.push_back({0, 1, l});
    CHECK(check_multiplicity_bounds(LabeledQuotientGraph(2, links)).empty());

    LabeledQuotientGraph deep(1, {{0, 0, {0, 0, 2}}});
    CHECK_THROWS(check_multiplicity_bounds(deep));
}

TEST_CASE("indivisibility") {
    CHECK(is_indivisible(pcu()).indivisible);

    LabeledQuotientGraph opposed(1, {{0, 0, {0, 0, 1}}, {0, 0, {0, 0, -1}}});
    auto r = is_indivisible(opposed);
    CHECK_FALSE(r.indivisible);
    CHECK(r.difference == IntVec3{0, 0, 2});

    LabeledQuotientGraph links(2, {{0, 1, {0, 0, 0}}, {0, 1, {2, 0, 0}}});
    auto r2 = is_indivisible(links);
    CHECK_FALSE(r2.indivisible);
    CHECK(gcd3(r2.difference) == 2);
}

TEST_CASE("gauge shift") {
    auto g = parse_lqg(kExampleTwoVertex).graph;
    CHECK(gauge_shift(g, 1, {0, 0, 0}) == g);

    std::vector<DirectedLabeledEdge> links;
    for (IntVec3 l : {IntVec3{0, 0, 0}, IntVec3{1, 0, 0}, IntVec3{0, 1, 0}, IntVec3{0, 0, 1}})
        links.push_back({0, 1, l});
    LabeledQuotientGraph h(2, links);
    auto shifted = gauge_shift(h, 1, {-1, 0, 0});
    std::vector<IntVec3> labels;
    for (const auto& e : shifted.edges()) labels.push_back(e.label);
    std::sort(labels.begin(), labels.end());
    std::vector<IntVec3> expected = {{-1, 0, 0}, {-1, 0, 1}, {-1, 1, 0}, {0, 0, 0}};
    CHECK(labels == expected);

    CHECK(gauge_shift(shifted, 1, {1, 0, 0}) == h);
    CHECK(gauge_shift(gauge_shift(g, 0, {2, -1, 3}), 0, {-2, 1, -3}) == g);
}

TEST_CASE("change of basis") {
    auto g = parse_lqg(kExampleTwoVertex).graph;
    CHECK(change_basis(g, IntMat3::identity()) == g);

    IntMat3 shear = IntMat3::identity();
    shear.m[0][2] = -1;  // x -> x - z
    auto sheared = change_basis(pcu(), shear);
    CHECK(depth(sheared) == 1);

    IntMat3 bad = IntMat3::identity();
    bad.m[0][0] = 2;
    CHECK_THROWS(change_basis(g, bad));
}

TEST_CASE("smith normal form") {
    auto r1 = smith_normal_form({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    CHECK(r1.factors == std::array<int64_t, 3>{1, 1, 2});
    CHECK(r1.lattice_index() == 2);

    auto r2 = smith_normal_form({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(r2.factors == std::array<int64_t, 3>{1, 1, 1});

    auto r3 = smith_normal_form({{0, 1, -1}, {1, 0, -1}, {1, 1, 1}});
    CHECK(r3.rank == 3);
    CHECK(r3.lattice_index() == 3);

    // Degenerate and rectangular inputs.
    CHECK(smith_normal_form({}).rank == 0);
    CHECK(smith_normal_form({{2, 4, 6}}).factors[0] == 2);
    CHECK(lattice_rank({{1, 0, 0}, {2, 0, 0}}) == 1);
}

TEST_CASE("smith transforms are unimodular and consistent") {
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<IntVec3> rows;
        int m = 1 + (int)(next_rand() % 4);
        for (int i = 0; i < m; ++i)
            rows.push_back({(int64_t)(next_rand() % 7) - 3, (int64_t)(next_rand() % 7) - 3,
                            (int64_t)(next_rand() % 7) - 3});
        auto r = smith_normal_form(rows);
        CHECK(std::abs(r.right.det()) == 1);
        CHECK(r.factors[0] >= 0);
        if (r.factors[0] > 0 && r.factors[1] > 0) CHECK(r.factors[1] % r.factors[0] == 0);
        if (r.factors[1] > 0 && r.factors[2] > 0) CHECK(r.factors[2] % r.factors[1] == 0);
    }
}

TEST_CASE("component structure multiplicities") {
    LabeledQuotientGraph fff(1, {{0, 0, {0, 1, 1}}, {0, 0, {1, 0, 1}}, {0, 0, {1, 1, 0}}});
    auto c1 = component_structure(fff);
    REQUIRE(c1.components.size() == 1);
    CHECK(c1.components[0].rank == 3);
    CHECK(c1.components[0].multiplicity == 2);

    LabeledQuotientGraph ggd(1, {{0, 0, {0, 1, -1}}, {0, 0, {1, 0, -1}}, {0, 0, {1, 1, 1}}});
    auto c2 = component_structure(ggd);
    CHECK(c2.components[0].multiplicity == 3);

    LabeledQuotientGraph aa(1, {{0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}});
    auto c3 = component_structure(aa);
    CHECK(c3.components[0].rank == 2);
    CHECK_FALSE(c3.components[0].finite_multiplicity());
}

TEST_CASE("component structure is gauge and relabel invariant") {
    auto g = parse_lqg(kExampleTwoVertex).graph;
    auto base = component_structure(g);
    auto shifted = component_structure(gauge_shift(g, 1, {3, -2, 1}));
    CHECK(base.components[0].rank == shifted.components[0].rank);
    CHECK(base.components[0].multiplicity == shifted.components[0].multiplicity);

    // Swap the two vertex ids.
    std::vector<DirectedLabeledEdge> swapped;
    for (auto e : g.edges()) swapped.push_back({1 - e.head, 1 - e.tail, -e.label});
    auto relabeled = component_structure(LabeledQuotientGraph(2, swapped));
    CHECK(base.components[0].rank == relabeled.components[0].rank);
    CHECK(base.components[0].multiplicity == relabeled.components[0].multiplicity);
}

TEST_CASE("dimension type") {
    CHECK(dimension_type(pcu()).str() == "{3;3}");

    LabeledQuotientGraph aa(1, {{0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}});
    CHECK(dimension_type(aa).str() == "{3;2}");
    CHECK(dimension_type(aa).deficient_span);

    LabeledQuotientGraph a(1, {{0, 0, {1, 0, 0}}});
    CHECK(dimension_type(a).str() == "{3;1}");

    // Two components of distinct ranks.
    LabeledQuotientGraph mixed(2, {{0, 0, {1, 0, 0}}, {1, 1, {0, 1, 0}}, {1, 1, {0, 0, 1}}});
    auto t = dimension_type(mixed);
    CHECK(t.component_ranks == std::vector<int>{2, 1});
}

TEST_CASE("depth after change of basis matches direct recomputation") {
    auto g = parse_lqg(kExampleTwoVertex).graph;
    for (int trial = 0; trial < 40; ++trial) {
        IntMat3 z = random_unimodular(2);
        auto h = change_basis(g, z);
        int64_t direct = 0;
        for (const auto& e : g.edges()) direct = std::max(direct, z.apply(e.label).max_abs());
        CHECK(depth(h) == direct);
    }
}

TEST_CASE("reduce_depth recovers depth 1") {
    IntMat3 shear = IntMat3::identity();
    shear.m[1][0] = 1;
    auto disguised = change_basis(pcu(), shear * shear);
    CHECK(depth(disguised) > 1);
    auto red = reduce_depth(disguised);
    CHECK(red.achieved_depth == 1);
    CHECK(red.certified_minimal);

    CHECK(reduce_depth(parse_lqg(kExampleTwoVertex).graph).achieved_depth == 1);

    // pcu plus a long-diagonal loop is a depth-1 net in a sheared basis.
    LabeledQuotientGraph long_diag(
        1, {{0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}, {0, 0, {0, 0, 1}}, {0, 0, {1, 2, 1}}});
    CHECK(depth(long_diag) == 2);
    auto red2 = reduce_depth(long_diag);
    CHECK(red2.achieved_depth == 1);
}
