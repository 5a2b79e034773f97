#include "nets/orbits.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nets {

namespace {

constexpr int kMaxN = 8;

uint64_t factorial(int n) {
    uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Lehmer rank of a permutation of {0..n-1}.
uint64_t perm_rank(int n, const uint8_t* p) {
    uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (p[j] < p[i]) ++smaller;
        rank = rank * (n - i) + smaller;
    }
    return rank;
}

void perm_unrank(int n, uint64_t rank, uint8_t* out) {
    std::array<uint64_t, kMaxN> digits{};
    for (int i = n - 1; i >= 0; --i) {
        digits[i] = rank % (n - i);
        rank /= (n - i);
    }
    std::array<uint8_t, kMaxN> avail{};
    for (int i = 0; i < n; ++i) avail[i] = (uint8_t)i;
    int left = n;
    for (int i = 0; i < n; ++i) {
        int d = (int)digits[i];
        out[i] = avail[d];
        for (int j = d; j < left - 1; ++j) avail[j] = avail[j + 1];
        --left;
    }
}

}  // namespace

GridPattern GridSymmetry::apply(const GridPattern& p) const {
    int n = p.n;
    std::array<std::array<uint8_t, 3>, kMaxN> pts;
    for (int i = 0; i < n; ++i) {
        std::array<uint8_t, 3> in{(uint8_t)i, p.y[i], p.z[i]};
        for (int a = 0; a < 3; ++a) {
            int v = in[src[a]];
            if (negate[a]) v = n - 1 - v;
            pts[i][a] = (uint8_t)((v + shift[a]) % n);
        }
    }
    std::sort(pts.begin(), pts.begin() + n,
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    GridPattern out;
    out.n = n;
    for (int i = 0; i < n; ++i) {
        out.y[i] = pts[i][1];
        out.z[i] = pts[i][2];
    }
    return out;
}

int GridSymmetry::rotation_det() const {
    int sign = 1;
    // Permutation parity.
    int inv = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (src[a] > src[b]) ++inv;
    if (inv % 2) sign = -sign;
    for (int a = 0; a < 3; ++a)
        if (negate[a]) sign = -sign;
    return sign;
}

uint64_t pattern_space_size(int n) {
    uint64_t f = factorial(n);
    return f * f;
}

GridPattern pattern_from_index(int n, uint64_t index) {
    uint64_t f = factorial(n);
    GridPattern p;
    p.n = n;
    perm_unrank(n, index / f, p.y.data());
    perm_unrank(n, index % f, p.z.data());
    return p;
}

uint64_t pattern_index(const GridPattern& p) {
    uint64_t f = factorial(p.n);
    return perm_rank(p.n, p.y.data()) * f + perm_rank(p.n, p.z.data());
}

void for_each_pattern(int n, const std::function<void(uint64_t, const GridPattern&)>& fn) {
    uint64_t total = pattern_space_size(n);
    for (uint64_t i = 0; i < total; ++i) fn(i, pattern_from_index(n, i));
}

std::vector<GridSymmetry> group_generators(int n, GridGroup g) {
    std::vector<GridSymmetry> gens;
    if (g != GridGroup::Rotations24) {
        for (int a = 0; a < 3; ++a) {
            GridSymmetry s;
            s.shift[a] = 1 % n;
            gens.push_back(s);
        }
    }
    if (g != GridGroup::Shifts) {
        // Quarter turns about z and x generate the 24 proper rotations.
        GridSymmetry rz;
        rz.src = {1, 0, 2};
        rz.negate = {false, true, false};
        GridSymmetry rx;
        rx.src = {0, 2, 1};
        rx.negate = {false, false, true};
        gens.push_back(rz);
        gens.push_back(rx);
    }
    if (g == GridGroup::ShiftRotations48) {
        GridSymmetry mirror;
        mirror.negate = {true, false, false};
        gens.push_back(mirror);
    }
    return gens;
}

std::vector<GridSymmetry> group_elements(int n, GridGroup g) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<GridSymmetry> rots, all;
    for (auto& p : perms)
        for (int sgn = 0; sgn < 8; ++sgn) {
            GridSymmetry s;
            s.src = {(uint8_t)p[0], (uint8_t)p[1], (uint8_t)p[2]};
            s.negate = {bool(sgn & 1), bool(sgn & 2), bool(sgn & 4)};
            all.push_back(s);
            if (s.rotation_det() == 1) rots.push_back(s);
        }

    std::vector<GridSymmetry> out;
    auto add_shifts = [&](const GridSymmetry& base) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    GridSymmetry s = base;
                    s.shift = {(uint8_t)x, (uint8_t)y, (uint8_t)z};
                    out.push_back(s);
                }
    };

    switch (g) {
        case GridGroup::Shifts:
            add_shifts(GridSymmetry{});
            break;
        case GridGroup::Rotations24:
            out = rots;
            break;
        case GridGroup::ShiftRotations24:
            for (const auto& r : rots) add_shifts(r);
            break;
        case GridGroup::ShiftRotations48:
            for (const auto& r : all) add_shifts(r);
            break;
    }
    return out;
}

uint64_t count_orbits(int n, GridGroup g) {
    if (n < 1 || n > 7) throw std::invalid_argument("orbit enumeration supports 1 <= n <= 7");
    uint64_t total = pattern_space_size(n);
    auto gens = group_generators(n, g);

    std::vector<bool> visited(total, false);
    std::vector<uint64_t> stack;
    uint64_t orbits = 0;
    for (uint64_t start = 0; start < total; ++start) {
        if (visited[start]) continue;
        ++orbits;
        visited[start] = true;
        stack.push_back(start);
        while (!stack.empty()) {
            uint64_t idx = stack.back();
            stack.pop_back();
            GridPattern p = pattern_from_index(n, idx);
            for (const auto& s : gens) {
                uint64_t im = pattern_index(s.apply(p));
                if (!visited[im]) {
                    visited[im] = true;
                    stack.push_back(im);
                }
            }
        }
    }
    return orbits;
}

uint64_t count_orbits_minimage(int n, GridGroup g) {
    if (n < 1 || n > 7) throw std::invalid_argument("orbit enumeration supports 1 <= n <= 7");
    int64_t total = (int64_t)pattern_space_size(n);
    auto elems = group_elements(n, g);

    uint64_t orbits = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1024) reduction(+ : orbits)
#endif
    for (int64_t i = 0; i < total; ++i) {
        GridPattern p = pattern_from_index(n, (uint64_t)i);
        uint64_t self = p.key();
        bool minimal = true;
        for (const auto& s : elems) {
            if (s.apply(p).key() < self) {
                minimal = false;
                break;
            }
        }
        if (minimal) ++orbits;
    }
    return orbits;
}

uint64_t alpha_closed_form(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    auto phi = [](int r) {
        int result = r;
        for (int p = 2; p * p <= r; ++p)
            if (r % p == 0) {
                while (r % p == 0) r /= p;
                result -= result / p;
            }
        if (r > 1) result -= result / r;
        return result;
    };

    unsigned __int128 sum = (unsigned __int128)factorial(n) * factorial(n);
    for (int r = 2; r <= n; ++r) {
        if (n % r != 0) continue;
        unsigned __int128 fixed = 1;
        for (int j = 0; j * r < n; ++j) fixed *= (unsigned __int128)(n - j * r) * (n - j * r);
        unsigned __int128 p = phi(r);
        sum += p * p * p * fixed;
    }
    unsigned __int128 cube = (unsigned __int128)n * n * n;
    if (sum % cube != 0) throw std::logic_error("orbit count sum not divisible by group order");
    uint64_t result = (uint64_t)(sum / cube);
    return result;
}

uint64_t rho(int n) { return count_orbits(n, GridGroup::Rotations24); }

namespace {

// Full stabilizer of a pattern over 48 signed permutations x shifts, acting
// transitively on its points?
bool stabilizer_transitive(const GridPattern& p) {
    int n = p.n;
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

    std::array<int, kMaxN> cls{};
    for (int i = 0; i < n; ++i) cls[i] = i;
    std::function<int(int)> find = [&](int a) { return cls[a] == a ? a : cls[a] = find(cls[a]); };

    std::array<std::array<uint8_t, 3>, kMaxN> pts;
    for (int i = 0; i < n; ++i) pts[i] = {(uint8_t)i, p.y[i], p.z[i]};

    for (auto& perm : perms)
        for (int sgn = 0; sgn < 8; ++sgn)
            for (int sx = 0; sx < n; ++sx)
                for (int sy = 0; sy < n; ++sy)
                    for (int sz = 0; sz < n; ++sz) {
                        GridSymmetry s;
                        s.src = {(uint8_t)perm[0], (uint8_t)perm[1], (uint8_t)perm[2]};
                        s.negate = {bool(sgn & 1), bool(sgn & 2), bool(sgn & 4)};
                        s.shift = {(uint8_t)sx, (uint8_t)sy, (uint8_t)sz};
                        // Image point of each pattern point; stabilizer iff a permutation.
                        std::array<int, kMaxN> to{};
                        bool stab = true;
                        for (int i = 0; i < n && stab; ++i) {
                            std::array<uint8_t, 3> q;
                            for (int a = 0; a < 3; ++a) {
                                int v = pts[i][s.src[a]];
                                if (s.negate[a]) v = n - 1 - v;
                                q[a] = (uint8_t)((v + s.shift[a]) % n);
                            }
                            int j = q[0];
                            if (p.y[j] != q[1] || p.z[j] != q[2]) stab = false;
                            to[i] = j;
                        }
                        if (!stab) continue;
                        for (int i = 0; i < n; ++i)
                            if (find(i) != find(to[i])) cls[find(i)] = find(to[i]);
                    }

    for (int i = 1; i < n; ++i)
        if (find(i) != find(0)) return false;
    return true;
}

}  // namespace

std::vector<GridPattern> transitive_class_representatives(int n) {
    if (n < 1 || n > 7) throw std::invalid_argument("beta_t supports 1 <= n <= 7");
    uint64_t total = pattern_space_size(n);
    auto gens = group_generators(n, GridGroup::ShiftRotations48);

    std::vector<bool> visited(total, false);
    std::vector<uint64_t> stack;
    std::vector<GridPattern> reps;
    for (uint64_t start = 0; start < total; ++start) {
        if (visited[start]) continue;
        // Stabilizer transitivity is a class property; test the orbit root.
        GridPattern root = pattern_from_index(n, start);
        if (stabilizer_transitive(root)) reps.push_back(root);
        visited[start] = true;
        stack.push_back(start);
        while (!stack.empty()) {
            uint64_t idx = stack.back();
            stack.pop_back();
            GridPattern p = pattern_from_index(n, idx);
            for (const auto& s : gens) {
                uint64_t im = pattern_index(s.apply(p));
                if (!visited[im]) {
                    visited[im] = true;
                    stack.push_back(im);
                }
            }
        }
    }
    return reps;
}

uint64_t beta_t(int n) { return transitive_class_representatives(n).size(); }

uint64_t alpha_via_beta_refinement(int n) {
    uint64_t total = pattern_space_size(n);
    auto beta_gens = group_generators(n, GridGroup::ShiftRotations48);
    auto shift_elems = group_elements(n, GridGroup::Shifts);

    std::vector<bool> visited(total, false);
    std::vector<uint64_t> stack, orbit;
    uint64_t alpha_sum = 0;
    for (uint64_t start = 0; start < total; ++start) {
        if (visited[start]) continue;
        orbit.clear();
        visited[start] = true;
        stack.push_back(start);
        while (!stack.empty()) {
            uint64_t idx = stack.back();
            stack.pop_back();
            orbit.push_back(idx);
            GridPattern p = pattern_from_index(n, idx);
            for (const auto& s : beta_gens) {
                uint64_t im = pattern_index(s.apply(p));
                if (!visited[im]) {
                    visited[im] = true;
                    stack.push_back(im);
                }
            }
        }
        // Count distinct shift-orbit representatives inside this orbit.
        std::vector<uint64_t> reps;
        for (uint64_t idx : orbit) {
            GridPattern p = pattern_from_index(n, idx);
            uint64_t mn = p.key();
            for (const auto& s : shift_elems) mn = std::min(mn, s.apply(p).key());
            reps.push_back(mn);
        }
        std::sort(reps.begin(), reps.end());
        alpha_sum += std::unique(reps.begin(), reps.end()) - reps.begin();
    }
    return alpha_sum;
}

}  // namespace nets
