#include "nets/lqg.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

namespace nets {

LabeledQuotientGraph::LabeledQuotientGraph(int vertex_count, std::vector<DirectedLabeledEdge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    for (auto& e : edges_) {
        if (e.tail < 0 || e.tail >= vertex_count_ || e.head < 0 || e.head >= vertex_count_)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.tail == e.head && e.label.is_zero())
            throw std::invalid_argument("degenerate loop with zero label");
        if (e.tail > e.head) {
            std::swap(e.tail, e.head);
            e.label = -e.label;
        }
    }
}

VertexId LabeledQuotientGraph::vertex_id(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return (VertexId)i;
    throw std::invalid_argument("unknown vertex: " + name);
}

std::vector<DirectedLabeledEdge> LabeledQuotientGraph::canonical_edges() const {
    std::vector<DirectedLabeledEdge> out = edges_;
    for (auto& e : out)
        if (e.tail == e.head) e.label = sign_canonical(e.label);
    std::sort(out.begin(), out.end());
    return out;
}

Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        int64_t n = std::stoll(s.substr(0, slash));
        int64_t d = std::stoll(s.substr(slash + 1));
        if (d <= 0) throw std::invalid_argument("denominator must be positive");
        return Rat(n, d);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

ParsedLqg parse_lqg(const std::string& text) {
    std::vector<std::string> names;
    std::unordered_map<std::string, VertexId> ids;
    std::vector<DirectedLabeledEdge> edges;
    std::map<VertexId, Rat3> positions;

    auto lookup = [&](const std::string& name, int line) {
        auto it = ids.find(name);
        if (it == ids.end()) throw ParseError(line, "unknown vertex '" + name + "'");
        return it->second;
    };

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        std::string kw;
        if (!(ls >> kw)) continue;

        if (kw == "vertex") {
            std::string name;
            if (!(ls >> name)) throw ParseError(line, "vertex requires a name");
            if (ids.count(name)) throw ParseError(line, "duplicate vertex '" + name + "'");
            ids[name] = (VertexId)names.size();
            names.push_back(name);
        } else if (kw == "edge") {
            std::string a, b;
            int64_t k1, k2, k3;
            if (!(ls >> a >> b >> k1 >> k2 >> k3)) throw ParseError(line, "edge requires: v w k1 k2 k3");
            DirectedLabeledEdge e{lookup(a, line), lookup(b, line), {k1, k2, k3}};
            if (e.tail == e.head) {
                if (e.label.is_zero()) throw ParseError(line, "degenerate loop with zero label");
                e.label = sign_canonical(e.label);
            } else if (e.tail > e.head) {
                std::swap(e.tail, e.head);
                e.label = -e.label;
            }
            for (const auto& prev : edges)
                if (prev == e) throw ParseError(line, "duplicate parallel edge with equal label");
            edges.push_back(e);
        } else if (kw == "pos") {
            std::string v, xs, ys, zs;
            if (!(ls >> v >> xs >> ys >> zs)) throw ParseError(line, "pos requires: v x y z");
            Rat3 p;
            try {
                p = {Rat::parse(xs), Rat::parse(ys), Rat::parse(zs)};
            } catch (const std::exception& ex) {
                throw ParseError(line, ex.what());
            }
            for (int i = 0; i < 3; ++i)
                if (p[i] < Rat(0) || p[i] >= Rat(1)) throw ParseError(line, "position outside [0,1)^3");
            positions[lookup(v, line)] = p;
        } else {
            throw ParseError(line, "unknown directive '" + kw + "'");
        }
        std::string extra;
        if (ls >> extra) throw ParseError(line, "trailing tokens");
    }

    ParsedLqg out;
    out.graph = LabeledQuotientGraph((int)names.size(), std::move(edges));
    out.graph.set_vertex_names(std::move(names));
    out.positions = std::move(positions);
    return out;
}

std::string format_lqg(const ParsedLqg& p) {
    std::ostringstream os;
    auto name = [&](VertexId v) {
        const auto& names = p.graph.vertex_names();
        return (size_t)v < names.size() ? names[v] : "v" + std::to_string(v + 1);
    };
    for (int v = 0; v < p.graph.vertex_count(); ++v) os << "vertex " << name(v) << "\n";
    for (const auto& e : p.graph.edges())
        os << "edge " << name(e.tail) << " " << name(e.head) << " " << e.label.x << " " << e.label.y << " "
           << e.label.z << "\n";
    for (const auto& [v, pos] : p.positions)
        os << "pos " << name(v) << " " << pos.x.str() << " " << pos.y.str() << " " << pos.z.str() << "\n";
    return os.str();
}

int64_t depth(const LabeledQuotientGraph& g) {
    int64_t d = 0;
    for (const auto& e : g.edges()) d = std::max(d, e.label.max_abs());
    return d;
}

std::vector<BoundsViolation> check_multiplicity_bounds(const LabeledQuotientGraph& g) {
    if (depth(g) > 1) throw std::invalid_argument("multiplicity bounds only apply to depth-1 graphs");
    std::vector<BoundsViolation> out;
    std::map<VertexId, int> loops;
    std::map<std::pair<VertexId, VertexId>, int> pairs;
    for (const auto& e : g.edges()) {
        if (e.tail == e.head)
            ++loops[e.tail];
        else
            ++pairs[{e.tail, e.head}];
    }
    for (auto [v, n] : loops)
        if (n > 7) out.push_back({true, v, v, n});
    for (auto [vw, n] : pairs)
        if (n > 8) out.push_back({false, vw.first, vw.second, n});
    return out;
}

IndivisibilityResult is_indivisible(const LabeledQuotientGraph& g) {
    const auto& edges = g.edges();
    for (size_t i = 0; i < edges.size(); ++i)
        for (size_t j = i + 1; j < edges.size(); ++j) {
            const auto& a = edges[i];
            const auto& b = edges[j];
            if (a.tail != b.tail || a.head != b.head) continue;
            if (a.tail == a.head) {
                // Loop pair: labels must span a primitive rank-2 sublattice.
                auto snf = smith_normal_form({a.label, b.label});
                if (snf.rank != 2 || snf.factors[0] != 1 || snf.factors[1] != 1) {
                    IntVec3 d = a.label - b.label;
                    if (gcd3(d) <= 1) d = a.label + b.label;
                    return {false, a, b, d};
                }
            } else {
                IntVec3 d = a.label - b.label;
                if (!is_primitive(d)) return {false, a, b, d};
            }
        }
    return {};
}

LabeledQuotientGraph gauge_shift(const LabeledQuotientGraph& g, VertexId v, IntVec3 t) {
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("gauge_shift: no such vertex");
    auto edges = g.edges();
    for (auto& e : edges) {
        if (e.tail == e.head) continue;
        if (e.head == v) e.label = e.label + t;
        if (e.tail == v) e.label = e.label - t;
    }
    auto out = LabeledQuotientGraph(g.vertex_count(), std::move(edges));
    out.set_vertex_names(g.vertex_names());
    return out;
}

LabeledQuotientGraph change_basis(const LabeledQuotientGraph& g, const IntMat3& z) {
    if (!z.is_unimodular()) throw std::invalid_argument("change_basis: matrix is not unimodular");
    auto edges = g.edges();
    for (auto& e : edges) e.label = z.apply(e.label);
    auto out = LabeledQuotientGraph(g.vertex_count(), std::move(edges));
    out.set_vertex_names(g.vertex_names());
    return out;
}

ComponentStructure component_structure(const LabeledQuotientGraph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<std::pair<int, bool>>> adj(n);  // (edge index, forward?)
    const auto& edges = g.edges();
    for (size_t i = 0; i < edges.size(); ++i) {
        adj[edges[i].tail].push_back({(int)i, true});
        if (edges[i].head != edges[i].tail) adj[edges[i].head].push_back({(int)i, false});
    }

    ComponentStructure out;
    std::vector<int> comp(n, -1);
    std::vector<IntVec3> potential(n);
    std::vector<IntVec3> all_voltages;

    for (int root = 0; root < n; ++root) {
        if (comp[root] != -1) continue;
        int id = (int)out.components.size();
        ComponentInfo info;
        std::vector<char> tree_edge(edges.size(), 0);

        comp[root] = id;
        potential[root] = {0, 0, 0};
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            info.vertices.push_back(v);
            for (auto [ei, fwd] : adj[v]) {
                const auto& e = edges[ei];
                int w = fwd ? e.head : e.tail;
                if (w == v) continue;
                if (comp[w] == -1) {
                    comp[w] = id;
                    IntVec3 lab = fwd ? e.label : -e.label;
                    potential[w] = potential[v] + lab;
                    tree_edge[ei] = 1;
                    q.push(w);
                }
            }
        }

        // Gauged label of a non-tree edge (v,w,k): k + phi(v) - phi(w).
        for (size_t ei = 0; ei < edges.size(); ++ei) {
            const auto& e = edges[ei];
            if (comp[e.tail] != id || tree_edge[ei]) continue;
            IntVec3 volt = e.label + potential[e.tail] - potential[e.head];
            if (!volt.is_zero()) info.voltage_basis.push_back(volt);
        }

        auto snf = smith_normal_form(info.voltage_basis);
        info.rank = snf.rank;
        info.multiplicity = snf.rank == 3 ? snf.lattice_index() : 0;
        std::sort(info.vertices.begin(), info.vertices.end());
        all_voltages.insert(all_voltages.end(), info.voltage_basis.begin(), info.voltage_basis.end());
        out.components.push_back(std::move(info));
    }

    out.total_voltage_rank = lattice_rank(all_voltages);
    return out;
}

std::string DimensionType::str() const {
    std::string s = "{" + std::to_string(ambient_rank) + ";";
    for (size_t i = 0; i < component_ranks.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(component_ranks[i]);
    }
    return s + "}";
}

DimensionType dimension_type(const LabeledQuotientGraph& g) {
    auto cs = component_structure(g);
    DimensionType t;
    std::set<int, std::greater<int>> ranks;
    for (const auto& c : cs.components) ranks.insert(c.rank);
    t.component_ranks.assign(ranks.begin(), ranks.end());
    t.deficient_span = cs.total_voltage_rank < 3;
    return t;
}

namespace {

// Multiset-of-labels key, invariant over the facts reduce_depth cares about.
std::vector<IntVec3> label_key(const LabeledQuotientGraph& g) {
    std::vector<IntVec3> k;
    for (const auto& e : g.canonical_edges()) k.push_back(e.label);
    std::sort(k.begin(), k.end());
    return k;
}

}  // namespace

DepthReduction reduce_depth(const LabeledQuotientGraph& g, int64_t search_bound) {
    if (search_bound < 1) throw std::invalid_argument("reduce_depth: search_bound must be >= 1");

    std::vector<IntMat3> generators;
    for (const auto& m : signed_permutation_matrices()) generators.push_back(m);
    for (const auto& m : elementary_shears()) generators.push_back(m);

    DepthReduction best{g, IntMat3::identity(), depth(g), depth(g) <= 1};
    if (best.certified_minimal) return best;

    std::set<std::vector<IntVec3>> seen{label_key(g)};
    std::queue<std::pair<LabeledQuotientGraph, IntMat3>> frontier;
    frontier.push({g, IntMat3::identity()});

    while (!frontier.empty()) {
        auto [cur, acc] = frontier.front();
        frontier.pop();
        for (const auto& z : generators) {
            IntMat3 nacc = z * acc;
            if (nacc.max_abs() > search_bound) continue;
            auto next = change_basis(cur, z);
            auto key = label_key(next);
            if (!seen.insert(key).second) continue;
            int64_t d = depth(next);
            if (d < best.achieved_depth) {
                best = {next, nacc, d, d <= 1};
                if (best.certified_minimal) return best;
            }
            frontier.push({std::move(next), nacc});
        }
    }
    return best;
}

}  // namespace nets
