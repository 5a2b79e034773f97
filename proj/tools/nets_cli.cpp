// Command-line surface for periodic-net analysis: quotient-graph invariants,
// lattice and double-lattice censuses, n-grid orbit counts, superlattice
// enumeration, free-region scans and graph-knot export.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "nets/enumeration.hpp"
#include "nets/freespace.hpp"
#include "nets/geometry.hpp"
#include "nets/invariants.hpp"
#include "nets/orbits.hpp"
#include "nets/superlattices.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using namespace nets;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& data) {
    if (auto dir = fs::path(path).parent_path(); !dir.empty()) fs::create_directories(dir);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

// Minimal CSV: '#' comments, comma-separated cells.
std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        if (!row.empty()) rows.push_back(row);
    }
    return rows;
}

ParsedLqg load_lqg(const std::string& path) { return parse_lqg(read_file(path)); }

ModelNet to_model_net(const ParsedLqg& p) {
    ModelNet m;
    m.lqg = p.graph;
    m.positions.assign(p.graph.vertex_count(), Rat3{});
    for (const auto& [v, pos] : p.positions) m.positions[v] = pos;
    return m;
}

int cmd_analyze(const std::string& path, const std::string& knot_out, const std::string& knot_format) {
    ParsedLqg parsed;
    try {
        parsed = load_lqg(path);
    } catch (const ParseError& e) {
        std::cerr << path << ":" << e.line << ": " << e.what() << "\n";
        return kExitInput;
    }
    const auto& g = parsed.graph;
    std::cout << "vertices: " << g.vertex_count() << "\nedges: " << g.edges().size()
              << "\ndepth: " << depth(g) << "\n";

    if (depth(g) <= 1) {
        auto violations = check_multiplicity_bounds(g);
        if (violations.empty())
            std::cout << "multiplicity bounds: ok\n";
        else
            for (const auto& v : violations)
                std::cout << "multiplicity bound exceeded: "
                          << (v.loop_bound ? "loops at vertex " + std::to_string(v.vertex)
                                           : "edges between " + std::to_string(v.vertex) + " and " +
                                                 std::to_string(v.other))
                          << " = " << v.count << "\n";
    }

    auto indiv = is_indivisible(g);
    if (indiv.indivisible)
        std::cout << "indivisible: yes\n";
    else
        std::cout << "indivisible: no (labels " << to_string(indiv.first.label) << ", "
                  << to_string(indiv.second.label) << "; difference " << to_string(indiv.difference) << ")\n";

    std::cout << "dimension type: " << dimension_type(g).str() << "\n";
    auto comps = component_structure(g);
    for (size_t i = 0; i < comps.components.size(); ++i) {
        const auto& c = comps.components[i];
        std::cout << "component " << i << ": " << c.vertices.size() << " vertices, voltage rank " << c.rank
                  << ", multiplicity "
                  << (c.finite_multiplicity() ? std::to_string(c.multiplicity) : std::string("inf")) << "\n";
    }

    if ((int)parsed.positions.size() == g.vertex_count() && g.vertex_count() > 0) {
        ModelNet m = to_model_net(parsed);
        auto rep = is_proper(m);
        std::cout << "proper: " << (rep.proper ? "yes" : "no") << "\n";
        if (rep.proper) {
            auto fp = fingerprint(m);
            std::cout << "coordination:";
            for (int c : fp.coordination) std::cout << " " << c;
            std::cout << "\ncs:";
            for (auto n : fp.cs) std::cout << " " << n;
            std::cout << "\ntd10: " << fp.td10 << "\n";
            if (fp.hxl) std::cout << "hxl: " << *fp.hxl << "\n";
            if (fp.penetration) std::cout << "penetration: " << fp.penetration->str() << "\n";
            if (!knot_out.empty()) {
                auto k = linear_graph_knot(m);
                write_file(knot_out, export_knot(k, knot_format));
                std::cout << "knot written: " << knot_out << "\n";
            }
        } else if (!knot_out.empty()) {
            std::cerr << "knot export requires a proper net\n";
            return kExitInput;
        }
    }
    return kExitOk;
}

std::string census_csv(const LatticeCensus& census) {
    std::ostringstream os;
    os << "kind,word,coordination,hxl,penetration,td10,multiplicity";
    for (int i = 1; i <= 10; ++i) os << ",cs" << i;
    os << "\n";
    auto row = [&](const LatticeClass& c, const char* kind) {
        os << kind << "," << c.canonical.str() << "," << c.fp.coordination[0] << ","
           << (c.fp.hxl ? std::to_string(*c.fp.hxl) : "-") << ","
           << (c.fp.penetration ? c.fp.penetration->str() : "-") << "," << c.fp.td10 << ","
           << (c.fp.multiplicity == 0 ? "inf" : std::to_string(c.fp.multiplicity));
        for (auto n : c.fp.cs) os << "," << n;
        os << "\n";
    };
    for (const auto& c : census.connected) row(c, "connected");
    for (const auto& c : census.disconnected) row(c, "disconnected");
    return os.str();
}

std::string census_json(const LatticeCensus& census) {
    nlohmann::json j;
    auto fill = [&](const std::vector<LatticeClass>& pool) {
        auto arr = nlohmann::json::array();
        for (const auto& c : pool) {
            nlohmann::json row;
            row["word"] = c.canonical.str();
            row["members"] = c.members.size();
            row["coordination"] = c.fp.coordination[0];
            if (c.fp.hxl) row["hxl"] = *c.fp.hxl;
            if (c.fp.penetration) row["penetration"] = c.fp.penetration->str();
            row["td10"] = c.fp.td10;
            if (c.fp.multiplicity > 0) row["multiplicity"] = c.fp.multiplicity;
            arr.push_back(std::move(row));
        }
        return arr;
    };
    j["connected"] = fill(census.connected);
    j["disconnected"] = fill(census.disconnected);
    return j.dump(2) + "\n";
}

// Expected lattice rows: kind,word,coordination,hxl,penetration,td10 with '-'
// for unconstrained cells; words are matched through canonicalization.
int check_lattice_expect(const LatticeCensus& census, const std::string& path) {
    int failures = 0;
    auto rows = read_csv(path);
    size_t expected_connected = 0, expected_disconnected = 0;
    for (const auto& row : rows) {
        if (row.size() < 6) {
            std::cerr << "expect: malformed row\n";
            return kExitInput;
        }
        bool connected = row[0] == "connected";
        (connected ? expected_connected : expected_disconnected) += 1;
        EdgeWord w = canonicalize_lattice_word(EdgeWord::parse(row[1]));
        const auto& pool = connected ? census.connected : census.disconnected;
        auto it = std::find_if(pool.begin(), pool.end(),
                               [&](const LatticeClass& c) { return c.canonical == w; });
        if (it == pool.end()) {
            std::cout << "MISSING class for word '" << row[1] << "'\n";
            ++failures;
            continue;
        }
        auto mismatch = [&](const std::string& cell, const std::string& got, const char* what) {
            if (cell != "-" && cell != got) {
                std::cout << "MISMATCH " << row[1] << " " << what << ": computed " << got << ", expected "
                          << cell << "\n";
                ++failures;
            }
        };
        mismatch(row[2], std::to_string(it->fp.coordination[0]), "coordination");
        mismatch(row[3], it->fp.hxl ? std::to_string(*it->fp.hxl) : "-", "hxl");
        mismatch(row[4], it->fp.penetration ? it->fp.penetration->str() : "-", "penetration");
        mismatch(row[5], std::to_string(it->fp.td10), "td10");
    }
    if (expected_connected != census.connected.size() || expected_disconnected != census.disconnected.size()) {
        std::cout << "COUNT mismatch: computed " << census.connected.size() << "+"
                  << census.disconnected.size() << " classes, expected " << expected_connected << "+"
                  << expected_disconnected << "\n";
        ++failures;
    }
    return failures == 0 ? kExitOk : kExitMismatch;
}

int cmd_census_lattice(const std::string& out_dir, const std::string& expect, const std::string& format) {
    LatticeCensus census;
    try {
        census = lattice_census(true);
    } catch (const std::exception& e) {
        std::cout << "census failed: " << e.what() << "\n";
        return kExitMismatch;
    }
    std::cout << "connected classes: " << census.connected.size() << "\n"
              << "disconnected classes: " << census.disconnected.size() << "\n";
    if (!out_dir.empty()) {
        bool json = format == "json";
        auto path = fs::path(out_dir) / (json ? "census.json" : "census.csv");
        write_file(path.string(), json ? census_json(census) : census_csv(census));
        std::cout << "written: " << path.string() << "\n";
    }
    if (!expect.empty()) return check_lattice_expect(census, expect);
    return kExitOk;
}

int cmd_census_double(int m_filter, const std::string& out_dir, const std::string& expect) {
    std::map<int, size_t> counts;
    int lo = m_filter > 0 ? m_filter : 4;
    int hi = m_filter > 0 ? m_filter : 8;
    for (int m = lo; m <= hi; ++m) {
        auto instances = enumerate_double_lattice(m);
        auto cls = classify_double_lattice_topologies(instances);
        counts[m] = cls.classes.size();
        std::cout << "m=" << m << ": " << instances.size() << " admissible label sets, "
                  << cls.classes.size() << " topologies\n";
        for (auto [a, b] : cls.prefix_collisions)
            std::cout << "  review: classes " << a << " and " << b << " share a coordination prefix\n";
        if (!out_dir.empty()) {
            std::ostringstream os;
            os << "labels,members,cs_prefix\n";
            for (const auto& c : cls.classes) {
                for (size_t i = 0; i < c.labels.size(); ++i) os << (i ? " " : "") << to_string(c.labels[i]);
                os << "," << c.members << ",";
                for (size_t i = 0; i < c.cs_prefix.size(); ++i) os << (i ? " " : "") << c.cs_prefix[i];
                os << "\n";
            }
            auto path = fs::path(out_dir) / ("double_lattice_m" + std::to_string(m) + ".csv");
            write_file(path.string(), os.str());
            std::cout << "written: " << path.string() << "\n";
        }
    }
    if (!expect.empty()) {
        int failures = 0;
        for (const auto& row : read_csv(expect)) {
            if (row.size() < 2) continue;
            int m = std::stoi(row[0]);
            if (counts.count(m) && counts[m] != (size_t)std::stoul(row[1])) {
                std::cout << "MISMATCH m=" << m << ": computed " << counts[m] << ", expected " << row[1]
                          << "\n";
                ++failures;
            }
        }
        return failures == 0 ? kExitOk : kExitMismatch;
    }
    return kExitOk;
}

struct GridRequest {
    int n = 0;
    std::string mode;
    bool force = false;
    std::string method = "auto";
};

// Desk-scale envelopes; beyond them a run needs --force.
bool within_envelope(const GridRequest& r) {
    if (r.mode == "alpha") return r.method == "closed-form" || r.n <= 6;
    if (r.mode == "beta") return r.n <= 6;
    if (r.mode == "beta-t") return r.n <= 7;
    if (r.mode == "beta-tt") return r.n <= 12;
    if (r.mode == "rho") return r.n <= 6;
    return false;
}

uint64_t grid_count(const GridRequest& r) {
    if (r.mode == "alpha") {
        if (r.method == "closed-form") return alpha_closed_form(r.n);
        if (r.method == "minimage") return count_orbits_minimage(r.n, GridGroup::Shifts);
        return count_orbits(r.n, GridGroup::Shifts);
    }
    if (r.mode == "beta") {
        if (r.method == "minimage") return count_orbits_minimage(r.n, GridGroup::ShiftRotations48);
        return count_orbits(r.n, GridGroup::ShiftRotations48);
    }
    if (r.mode == "beta-t") return beta_t(r.n);
    if (r.mode == "beta-tt") return beta_tt(r.n).classes;
    if (r.mode == "rho") return rho(r.n);
    throw std::invalid_argument("unknown mode " + r.mode);
}

int cmd_grids(const GridRequest& r, const std::string& expect) {
    if (!within_envelope(r) && !r.force) {
        std::cerr << "n=" << r.n << " exceeds the desk-scale envelope for mode " << r.mode
                  << " (use --force)\n";
        return kExitInput;
    }
    uint64_t count = grid_count(r);
    std::cout << r.mode << "(" << r.n << ") = " << count << "\n";
    if (!expect.empty()) {
        for (const auto& row : read_csv(expect)) {
            if (row.size() >= 3 && row[0] == r.mode && std::stoi(row[1]) == r.n) {
                if (std::stoull(row[2]) != count) {
                    std::cout << "MISMATCH: expected " << row[2] << "\n";
                    return kExitMismatch;
                }
                std::cout << "matches expected value\n";
                return kExitOk;
            }
        }
        std::cout << "no expected value for " << r.mode << "," << r.n << "\n";
    }
    return kExitOk;
}

int cmd_grids_table(const std::string& out_path) {
    std::ostringstream os;
    os << "mode";
    for (int n = 2; n <= 7; ++n) os << ",n=" << n;
    os << "\n";
    auto row = [&](const std::string& mode, int max_n) {
        os << mode;
        for (int n = 2; n <= 7; ++n) {
            os << ",";
            if (n > max_n)
                os << "skipped";
            else
                os << grid_count({n, mode, false, mode == "alpha" && n == 7 ? "closed-form" : "auto"});
        }
        os << "\n";
    };
    row("alpha", 7);
    row("beta", 6);
    row("beta-t", 7);
    row("beta-tt", 7);
    std::string table = os.str();
    if (out_path.empty())
        std::cout << table;
    else {
        write_file(out_path, table);
        std::cout << "written: " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_superlattices(int64_t n, bool details) {
    auto res = beta_tt(n);
    std::cout << "n=" << n << ": hnf matrices " << res.hnf_count << ", proper " << res.proper_count
              << ", classes " << res.classes << "\n";
    if (details)
        for (const auto& s : res.class_reps) {
            std::cout << "  class:";
            for (const auto& rep : s.reps)
                std::cout << " (" << Rat(rep.x, n).str() << "," << Rat(rep.y, n).str() << ","
                          << Rat(rep.z, n).str() << ")";
            std::cout << "\n";
        }
    return kExitOk;
}

int cmd_freespace(const std::string& path, const std::string& mobile_name, int resolution,
                  const std::string& emit_grid, bool serial) {
    ParsedLqg parsed;
    try {
        parsed = load_lqg(path);
    } catch (const ParseError& e) {
        std::cerr << path << ":" << e.line << ": " << e.what() << "\n";
        return kExitInput;
    }
    VertexId mobile = parsed.graph.vertex_id(mobile_name);
    std::map<VertexId, Rat3> fixed;
    for (const auto& [v, p] : parsed.positions)
        if (v != mobile) fixed[v] = p;

    auto scan = serial ? scan_free_region_serial(parsed.graph, fixed, mobile, resolution)
                       : scan_free_region(parsed.graph, fixed, mobile, resolution);
    if (scan.trivial_mobile) std::cout << "note: mobile vertex has no incident edges\n";
    std::cout << "components: " << scan.component_count << "\n";
    for (size_t i = 0; i < scan.representatives.size(); ++i) {
        auto c = scan.representatives[i];
        std::cout << "component " << i << " representative cell (" << c.x << "," << c.y << "," << c.z
                  << ") center (" << Rat(2 * c.x + 1, 2 * resolution).str() << ","
                  << Rat(2 * c.y + 1, 2 * resolution).str() << "," << Rat(2 * c.z + 1, 2 * resolution).str()
                  << ")\n";
    }
    if (!emit_grid.empty()) {
        write_file(emit_grid, free_region_json(scan));
        std::cout << "written: " << emit_grid << "\n";
    }
    return kExitOk;
}

int cmd_knot(const std::string& path, const std::string& format, const std::string& out) {
    ParsedLqg parsed;
    try {
        parsed = load_lqg(path);
    } catch (const ParseError& e) {
        std::cerr << path << ":" << e.line << ": " << e.what() << "\n";
        return kExitInput;
    }
    if ((int)parsed.positions.size() != parsed.graph.vertex_count()) {
        std::cerr << "knot export requires positions for every vertex\n";
        return kExitInput;
    }
    ModelNet m = to_model_net(parsed);
    if (!is_proper(m).proper) {
        std::cerr << "net is improper; no knot\n";
        return kExitInput;
    }
    auto text = export_knot(linear_graph_knot(m), format);
    if (out.empty())
        std::cout << text;
    else {
        write_file(out, text);
        std::cout << "written: " << out << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodic net analysis"};
    app.require_subcommand(1);

    int threads = 0;
    std::string format = "csv";
    app.add_option("--threads", threads, "worker thread count");
    app.add_option("--format", format, "artifact format where applicable")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string lqg_path, knot_out, expect, out_dir, mobile_name, emit_grid, out_path;
    std::string knot_format = "json", census_kind, mode, method = "auto";
    int n = 0, resolution = 32, m_filter = 0;
    bool force = false, details = false, serial = false, table = false;

    auto* analyze = app.add_subcommand("analyze", "invariants of a quotient-graph file");
    analyze->add_option("file", lqg_path)->required();
    analyze->add_option("--knot", knot_out, "write the linear graph knot");
    analyze->add_option("--knot-format", knot_format)->check(CLI::IsMember({"json", "obj"}));

    auto* census = app.add_subcommand("census", "lattice or double-lattice census");
    census->add_option("kind", census_kind)->required()->check(CLI::IsMember({"lattice", "double-lattice"}));
    census->add_option("--m", m_filter, "restrict double-lattice census to one multiplicity");
    census->add_option("--out", out_dir, "directory for census CSV files");
    census->add_option("--expect", expect, "CSV of expected values");

    auto* grids = app.add_subcommand("grids", "n-grid isotopy class counts");
    grids->add_option("--n", n);
    grids->add_option("--mode", mode)->check(CLI::IsMember({"alpha", "beta", "beta-t", "beta-tt", "rho"}));
    grids->add_option("--method", method)->check(CLI::IsMember({"auto", "minimage", "closed-form"}));
    grids->add_option("--expect", expect);
    grids->add_flag("--force", force, "run beyond the desk-scale envelope");
    grids->add_flag("--table", table, "emit the summary table for n=2..7");
    grids->add_option("--out", out_path, "table output path");

    auto* super = app.add_subcommand("superlattices", "index-n superlattice enumeration");
    super->add_option("--n", n)->required();
    super->add_flag("--details", details, "print representative shift lists");

    auto* freespace = app.add_subcommand("freespace", "free-region scan of one mobile vertex");
    freespace->add_option("file", lqg_path)->required();
    freespace->add_option("--mobile", mobile_name)->required();
    freespace->add_option("--resolution", resolution);
    freespace->add_option("--emit-grid", emit_grid);
    freespace->add_flag("--serial", serial, "use the serial exact-rational reference");

    auto* knot = app.add_subcommand("knot", "export the linear graph knot");
    knot->add_option("file", lqg_path)->required();
    knot->add_option("--format", knot_format)->check(CLI::IsMember({"json", "obj"}));
    knot->add_option("-o,--out", out_path);

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (*analyze) return cmd_analyze(lqg_path, knot_out, knot_format);
        if (*census) {
            if (census_kind == "lattice") return cmd_census_lattice(out_dir, expect, format);
            return cmd_census_double(m_filter, out_dir, expect);
        }
        if (*grids) {
            if (table) return cmd_grids_table(out_path);
            if (n < 1 || mode.empty()) {
                std::cerr << "grids requires --n and --mode\n";
                return kExitInput;
            }
            return cmd_grids({n, mode, force, method}, expect);
        }
        if (*super) return cmd_superlattices(n, details);
        if (*freespace) return cmd_freespace(lqg_path, mobile_name, resolution, emit_grid, serial);
        if (*knot) return cmd_knot(lqg_path, knot_format, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
