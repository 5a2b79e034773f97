#include "nets/enumeration.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nets {

const std::array<IntVec3, EdgeAlphabet::size>& EdgeAlphabet::directions() {
    static const std::array<IntVec3, size> dirs = {{
        {1, 0, 0},   // ax
        {0, 1, 0},   // ay
        {0, 0, 1},   // az
        {0, 1, 1},   // fx
        {1, 0, 1},   // fy
        {1, 1, 0},   // fz
        {0, 1, -1},  // gx
        {1, 0, -1},  // gy
        {1, -1, 0},  // gz
        {1, 1, 1},   // d1
        {-1, 1, 1},  // d2
        {-1, -1, 1}, // d3
        {1, -1, 1},  // d4
    }};
    return dirs;
}

const std::array<const char*, EdgeAlphabet::size>& EdgeAlphabet::names() {
    static const std::array<const char*, size> n = {"ax", "ay", "az", "fx", "fy", "fz", "gx",
                                                    "gy", "gz", "d1", "d2", "d3", "d4"};
    return n;
}

int EdgeAlphabet::class_of(IntVec3 v) {
    IntVec3 c = sign_canonical(v);
    const auto& dirs = directions();
    for (int i = 0; i < size; ++i)
        if (sign_canonical(dirs[i]) == c) return i;
    return -1;
}

std::vector<IntVec3> EdgeWord::directions() const {
    std::vector<IntVec3> out;
    for (int i = 0; i < EdgeAlphabet::size; ++i)
        if (mask >> i & 1) out.push_back(EdgeAlphabet::directions()[i]);
    return out;
}

std::string EdgeWord::str() const {
    std::string s;
    for (int i = 0; i < EdgeAlphabet::size; ++i)
        if (mask >> i & 1) {
            if (!s.empty()) s += " ";
            s += EdgeAlphabet::names()[i];
        }
    return s;
}

EdgeWord EdgeWord::parse(const std::string& letters) {
    EdgeWord w;
    std::istringstream is(letters);
    std::string tok;
    while (is >> tok) {
        int found = -1;
        for (int i = 0; i < EdgeAlphabet::size; ++i)
            if (tok == EdgeAlphabet::names()[i]) found = i;
        if (found < 0) throw std::invalid_argument("unknown edge letter: " + tok);
        w.mask |= (uint16_t)(1 << found);
    }
    if (w.mask == 0) throw std::invalid_argument("empty edge word");
    return w;
}

namespace {

bool word_connected(EdgeWord w) {
    auto dirs = w.directions();
    auto snf = smith_normal_form(dirs);
    return snf.rank == 3 && snf.lattice_index() == 1;
}

}  // namespace

std::vector<LatticeWordInfo> enumerate_lattice_words() {
    std::vector<LatticeWordInfo> out(1 << EdgeAlphabet::size);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (int m = 1; m < (1 << EdgeAlphabet::size); ++m) {
        EdgeWord w{(uint16_t)m};
        LatticeWordInfo info;
        info.word = w;
        info.proper = is_proper(ModelNet::lattice_net(w.directions())).proper;
        info.connected = info.proper && word_connected(w);
        out[m] = info;
    }
    out.erase(out.begin());  // mask 0
    return out;
}

EdgeWord canonicalize_lattice_word(EdgeWord w) {
    std::vector<IntMat3> gens;
    for (const auto& q : signed_permutation_matrices()) gens.push_back(q);
    for (const auto& z : elementary_shears()) gens.push_back(z);

    auto image = [](EdgeWord v, const IntMat3& z) -> int {
        uint16_t m = 0;
        for (auto d : v.directions()) {
            int cls = EdgeAlphabet::class_of(z.apply(d));
            if (cls < 0) return -1;  // leaves the depth-1 alphabet
            m |= (uint16_t)(1 << cls);
        }
        return m;
    };

    std::set<uint16_t> seen{w.mask};
    std::queue<EdgeWord> frontier;
    frontier.push(w);
    uint16_t best = w.mask;
    while (!frontier.empty()) {
        EdgeWord cur = frontier.front();
        frontier.pop();
        for (const auto& z : gens) {
            int m = image(cur, z);
            if (m < 0 || !seen.insert((uint16_t)m).second) continue;
            best = std::min<uint16_t>(best, (uint16_t)m);
            frontier.push(EdgeWord{(uint16_t)m});
        }
    }
    return EdgeWord{best};
}

LatticeCensus lattice_census(bool enforce_counts) {
    auto words = enumerate_lattice_words();
    std::map<uint16_t, LatticeClass> classes;
    for (const auto& info : words) {
        if (!info.proper) continue;
        EdgeWord canon = canonicalize_lattice_word(info.word);
        auto& cls = classes[canon.mask];
        cls.canonical = canon;
        cls.members.push_back(info.word);
        cls.connected = info.connected;
    }

    LatticeCensus census;
    for (auto& [mask, cls] : classes) {
        cls.fp = fingerprint(ModelNet::lattice_net(cls.canonical.directions()));
        (cls.connected ? census.connected : census.disconnected).push_back(cls);
    }
    if (enforce_counts && (census.connected.size() != 19 || census.disconnected.size() != 6))
        throw std::runtime_error("lattice census mismatch: " + std::to_string(census.connected.size()) +
                                 " connected, " + std::to_string(census.disconnected.size()) + " disconnected");
    return census;
}

ModelNet double_lattice_net(const std::vector<IntVec3>& labels, const Rat3& p2) {
    std::vector<DirectedLabeledEdge> edges;
    for (auto l : labels) edges.push_back({0, 1, l});
    ModelNet m;
    m.lqg = LabeledQuotientGraph(2, std::move(edges));
    m.positions = {Rat3{Rat(0), Rat(0), Rat(0)}, p2};
    return m;
}

namespace {

// Candidate placements of the second lattice: centered and generic points,
// closed under the inversion through (1/2,1/2,1/2).
const std::vector<Rat3>& placement_candidates() {
    static const std::vector<Rat3> pts = {
        Rat3{Rat(1, 4), Rat(1, 4), Rat(1, 4)}, Rat3{Rat(3, 4), Rat(3, 4), Rat(3, 4)},
        Rat3{Rat(1, 2), Rat(1, 2), Rat(1, 2)}, Rat3{Rat(1, 3), Rat(2, 5), Rat(3, 4)},
        Rat3{Rat(2, 3), Rat(3, 5), Rat(1, 4)},
    };
    return pts;
}

bool labels_indivisible(const std::vector<IntVec3>& labels) {
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j)
            if (!is_primitive(labels[i] - labels[j])) return false;
    return true;
}

bool labels_connected(const std::vector<IntVec3>& labels) {
    std::vector<IntVec3> diffs;
    for (size_t i = 1; i < labels.size(); ++i) diffs.push_back(labels[i] - labels[0]);
    auto snf = smith_normal_form(diffs);
    return snf.rank == 3 && snf.lattice_index() == 1;
}

}  // namespace

std::vector<DoubleLatticeInstance> enumerate_double_lattice(int m) {
    if (m < 1 || m > 8) throw std::invalid_argument("connecting multiplicity must be 1..8");

    // All size-m subsets of {-1,0,1}^3 containing (0,0,0).
    std::vector<IntVec3> cube;
    for (int64_t x = -1; x <= 1; ++x)
        for (int64_t y = -1; y <= 1; ++y)
            for (int64_t z = -1; z <= 1; ++z)
                if (!(x == 0 && y == 0 && z == 0)) cube.push_back({x, y, z});

    std::vector<std::vector<IntVec3>> candidates;
    std::vector<int> pick;
    std::function<void(int, int)> choose = [&](int start, int need) {
        if (need == 0) {
            std::vector<IntVec3> labels{{0, 0, 0}};
            for (int i : pick) labels.push_back(cube[i]);
            std::sort(labels.begin(), labels.end());
            if (labels_indivisible(labels) && labels_connected(labels)) candidates.push_back(std::move(labels));
            return;
        }
        for (int i = start; i + need <= (int)cube.size(); ++i) {
            pick.push_back(i);
            choose(i + 1, need - 1);
            pick.pop_back();
        }
    };
    choose(0, m - 1);

    std::vector<DoubleLatticeInstance> out(candidates.size());
    std::vector<char> keep(candidates.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (int64_t i = 0; i < (int64_t)candidates.size(); ++i) {
        for (const auto& p2 : placement_candidates()) {
            ModelNet net = double_lattice_net(candidates[i], p2);
            if (is_proper(net).proper) {
                out[i] = {candidates[i], p2};
                keep[i] = 1;
                break;
            }
        }
    }

    std::vector<DoubleLatticeInstance> result;
    for (size_t i = 0; i < candidates.size(); ++i)
        if (keep[i]) result.push_back(std::move(out[i]));
    return result;
}

namespace {

// Solve X * vs[i] = ws[i]; accept integral unimodular solutions.
std::optional<IntMat3> solve_unimodular(const std::array<IntVec3, 3>& vs, const std::array<IntVec3, 3>& ws) {
    IntMat3 v;  // columns vs
    for (int i = 0; i < 3; ++i)
        for (int r = 0; r < 3; ++r) v.m[r][i] = vs[i][r];
    int64_t dv = v.det();
    if (dv == 0) return std::nullopt;
    // X = W * adj(V) / det(V)
    IntMat3 w;
    for (int i = 0; i < 3; ++i)
        for (int r = 0; r < 3; ++r) w.m[r][i] = ws[i][r];
    IntMat3 adj;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            int r1 = (r + 1) % 3, r2 = (r + 2) % 3, c1 = (c + 1) % 3, c2 = (c + 2) % 3;
            adj.m[c][r] = v.m[r1][c1] * v.m[r2][c2] - v.m[r1][c2] * v.m[r2][c1];
        }
    IntMat3 num = w * adj;
    IntMat3 x;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            if (num.m[r][c] % dv != 0) return std::nullopt;
            x.m[r][c] = num.m[r][c] / dv;
        }
    if (!x.is_unimodular()) return std::nullopt;
    return x;
}

std::array<IntVec3, 3> independent_triple(const std::vector<IntVec3>& labels) {
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j)
            for (size_t k = j + 1; k < labels.size(); ++k) {
                IntVec3 a = labels[i], b = labels[j], c = labels[k];
                if (dot(a, cross(b, c)) != 0) return {a, b, c};
            }
    throw std::logic_error("no independent label triple in a connected instance");
}

}  // namespace

bool double_lattice_equivalent(const std::vector<IntVec3>& a, const std::vector<IntVec3>& b) {
    if (a.size() != b.size()) return false;
    std::vector<IntVec3> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    // Normalise the gauge of `a` so one label is zero.
    IntVec3 base = sa[0];
    std::array<IntVec3, 3> tri;
    {
        std::vector<IntVec3> ga;
        for (auto v : sa) ga.push_back(v - base);
        // Drop the zero label before picking a spanning triple.
        std::vector<IntVec3> nonzero;
        for (auto v : ga)
            if (!v.is_zero()) nonzero.push_back(v);
        tri = independent_triple(nonzero);
        sa = std::move(ga);
    }

    for (int eps : {1, -1})
        for (const auto& c : sb) {
            std::vector<IntVec3> target;
            for (auto v : sb) target.push_back(eps * (v - c));
            std::sort(target.begin(), target.end());
            // Try all ordered image triples.
            for (auto w1 : target)
                for (auto w2 : target)
                    for (auto w3 : target) {
                        if (w1.is_zero() || w2.is_zero() || w3.is_zero()) continue;
                        auto x = solve_unimodular(tri, {w1, w2, w3});
                        if (!x) continue;
                        std::vector<IntVec3> image;
                        for (auto v : sa) image.push_back(x->apply(v));
                        std::sort(image.begin(), image.end());
                        if (image == target) return true;
                    }
        }
    return false;
}

DoubleLatticeClassification classify_double_lattice_topologies(
    const std::vector<DoubleLatticeInstance>& instances) {
    // Bucket by cheap unimodular invariants before pairwise decisions.
    struct Bucket {
        std::vector<int> members;
    };
    auto invariant_key = [](const DoubleLatticeInstance& inst) {
        std::vector<int64_t> key;
        const auto& l = inst.labels;
        std::vector<int64_t> gcds;
        for (size_t i = 0; i < l.size(); ++i)
            for (size_t j = i + 1; j < l.size(); ++j) gcds.push_back(gcd3(l[i] - l[j]));
        std::sort(gcds.begin(), gcds.end());
        std::vector<int64_t> dets;
        for (size_t i = 0; i < l.size(); ++i)
            for (size_t j = i + 1; j < l.size(); ++j)
                for (size_t k = j + 1; k < l.size(); ++k)
                    for (size_t r = 0; r < l.size(); ++r) {
                        if (r == i || r == j || r == k) continue;
                        dets.push_back(std::abs(
                            dot(l[i] - l[r], cross(l[j] - l[r], l[k] - l[r]))));
                    }
        std::sort(dets.begin(), dets.end());
        key.push_back((int64_t)l.size());
        key.insert(key.end(), gcds.begin(), gcds.end());
        key.insert(key.end(), dets.begin(), dets.end());
        return key;
    };

    std::map<std::vector<int64_t>, Bucket> buckets;
    for (size_t i = 0; i < instances.size(); ++i) buckets[invariant_key(instances[i])].members.push_back((int)i);

    std::vector<DoubleLatticeClass> classes;
    std::vector<int> class_of(instances.size(), -1);
    for (auto& [key, bucket] : buckets) {
        std::vector<int> reps;
        for (int idx : bucket.members) {
            bool merged = false;
            for (int rep : reps)
                if (double_lattice_equivalent(instances[idx].labels, instances[rep].labels)) {
                    class_of[idx] = class_of[rep];
                    ++classes[class_of[rep]].members;
                    merged = true;
                    break;
                }
            if (!merged) {
                DoubleLatticeClass cls;
                cls.labels = instances[idx].labels;
                cls.members = 1;
                class_of[idx] = (int)classes.size();
                classes.push_back(std::move(cls));
                reps.push_back(idx);
            }
        }
    }

    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.labels < b.labels; });

    // Coordination-prefix cross-check: equal prefixes across distinct classes
    // are escalated for review, never merged.
    DoubleLatticeClassification out;
    std::map<std::vector<int64_t>, int> prefix_to_class;
    for (size_t ci = 0; ci < classes.size(); ++ci) {
        const auto& inst = *std::find_if(instances.begin(), instances.end(), [&](const auto& in) {
            return in.labels == classes[ci].labels;
        });
        ModelNet net = double_lattice_net(inst.labels, inst.placement);
        classes[ci].cs_prefix = coordination_sequence(net, 0, 6);
        auto [it, fresh] = prefix_to_class.insert({classes[ci].cs_prefix, (int)ci});
        if (!fresh) out.prefix_collisions.push_back({it->second, (int)ci});
    }
    out.classes = std::move(classes);
    return out;
}

}  // namespace nets
