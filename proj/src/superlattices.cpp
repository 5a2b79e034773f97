#include "nets/superlattices.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace nets {

std::vector<HNFMatrix> enumerate_hnf(int64_t n) {
    if (n < 1) throw std::invalid_argument("superlattice index must be positive");
    std::vector<HNFMatrix> out;
    for (int64_t p1 = 1; p1 <= n; ++p1) {
        if (n % p1 != 0) continue;
        int64_t m = n / p1;
        for (int64_t p2 = 1; p2 <= m; ++p2) {
            if (m % p2 != 0) continue;
            int64_t p3 = m / p2;
            for (int64_t q1 = 0; q1 < p2; ++q1)
                for (int64_t q2 = 0; q2 < p3; ++q2)
                    for (int64_t r1 = 0; r1 < p3; ++r1) out.push_back({p1, p2, p3, q1, q2, r1});
        }
    }
    return out;
}

Superlattice coset_representatives(const HNFMatrix& l, int64_t n) {
    if (l.index() != n) throw std::invalid_argument("matrix index does not match n");
    // adj(L) has integer rows; rows of L^-1 = adj(L)/n generate the
    // superlattice, so reduce the adjugate rows in (Z_n)^3.
    int64_t a = l.p1, b = l.q1, c = l.p2, d = l.r1, e = l.q2, f = l.p3;
    // L = [[a,0,0],[b,c,0],[d,e,f]] (row-major lower triangular).
    IntVec3 adj_rows[3] = {
        {c * f, 0, 0},
        {-(b * f), a * f, 0},
        {b * e - c * d, -(a * e), a * c},
    };

    auto normalize = [n](IntVec3 v) {
        auto m = [n](int64_t x) { return ((x % n) + n) % n; };
        return IntVec3{m(v.x), m(v.y), m(v.z)};
    };

    std::set<IntVec3> group{{0, 0, 0}};
    std::vector<IntVec3> frontier{{0, 0, 0}};
    while (!frontier.empty()) {
        IntVec3 cur = frontier.back();
        frontier.pop_back();
        for (const auto& g : adj_rows) {
            IntVec3 next = normalize(cur + g);
            if (group.insert(next).second) frontier.push_back(next);
        }
    }
    if ((int64_t)group.size() != n) throw std::logic_error("coset group has wrong order");
    Superlattice s;
    s.n = n;
    s.reps.assign(group.begin(), group.end());
    return s;
}

bool is_proper_grid(const Superlattice& s) {
    for (size_t i = 0; i < s.reps.size(); ++i)
        for (size_t j = i + 1; j < s.reps.size(); ++j) {
            IntVec3 d = s.reps[i] - s.reps[j];
            if (d.x % s.n == 0 || d.y % s.n == 0 || d.z % s.n == 0) return false;
        }
    return true;
}

BetaTTResult beta_tt(int64_t n) {
    BetaTTResult res;
    auto mats = enumerate_hnf(n);
    res.hnf_count = mats.size();

    std::set<std::vector<IntVec3>> distinct;
    std::vector<Superlattice> proper;
    for (const auto& l : mats) {
        auto s = coset_representatives(l, n);
        if (!distinct.insert(s.reps).second) continue;
        if (is_proper_grid(s)) proper.push_back(std::move(s));
    }
    res.proper_count = proper.size();

    auto qs = signed_permutation_matrices();
    auto canonical = [&](const Superlattice& s) {
        std::vector<IntVec3> best;
        for (const auto& q : qs) {
            std::vector<IntVec3> image;
            image.reserve(s.reps.size());
            for (const auto& r : s.reps) {
                IntVec3 v = q.apply(r);
                auto m = [&](int64_t x) { return ((x % n) + n) % n; };
                image.push_back({m(v.x), m(v.y), m(v.z)});
            }
            std::sort(image.begin(), image.end());
            if (best.empty() || image < best) best = std::move(image);
        }
        return best;
    };

    std::set<std::vector<IntVec3>> classes;
    for (const auto& s : proper) {
        if (classes.insert(canonical(s)).second) res.class_reps.push_back(s);
    }
    res.classes = classes.size();
    return res;
}

uint64_t count_order_n_subgroups_bruteforce(int64_t n) {
    // All subgroups of (Z_n)^3 of order n, generated by up to three elements.
    // Pairs whose closure already exceeds n prune the third-generator loop.
    if (n < 1 || n > 8) throw std::invalid_argument("brute-force subgroup count supports n <= 8");
    int64_t total = n * n * n;
    auto decode = [n](int64_t i) { return IntVec3{i / (n * n), (i / n) % n, i % n}; };
    auto encode = [n](IntVec3 v) { return (v.x * n + v.y) * n + v.z; };
    auto madd = [n](IntVec3 a, IntVec3 b) {
        return IntVec3{(a.x + b.x) % n, (a.y + b.y) % n, (a.z + b.z) % n};
    };

    struct Closure {
        std::array<uint64_t, 8> bits{};
        std::vector<IntVec3> elems;

        bool insert(int64_t code, IntVec3 v) {
            uint64_t& w = bits[code >> 6];
            uint64_t m = 1ull << (code & 63);
            if (w & m) return false;
            w |= m;
            elems.push_back(v);
            return true;
        }
    };

    // Extends a closed set by one generator; false once the size passes n.
    auto extend = [&](const Closure& base, IntVec3 g, Closure& out) {
        out = base;
        std::vector<IntVec3> frontier = base.elems;
        while (!frontier.empty()) {
            IntVec3 cur = frontier.back();
            frontier.pop_back();
            IntVec3 next = madd(cur, g);
            if (out.insert(encode(next), next)) {
                if ((int64_t)out.elems.size() > n) return false;
                frontier.push_back(next);
            }
        }
        return true;
    };

    Closure trivial;
    trivial.insert(0, {0, 0, 0});

    std::set<std::array<uint64_t, 8>> subgroups;
    Closure c1, c2, c3;
    for (int64_t i = 0; i < total; ++i) {
        if (!extend(trivial, decode(i), c1)) continue;
        for (int64_t j = i; j < total; ++j) {
            if (!extend(c1, decode(j), c2)) continue;
            for (int64_t k = j; k < total; ++k) {
                if (!extend(c2, decode(k), c3)) continue;
                if ((int64_t)c3.elems.size() == n) subgroups.insert(c3.bits);
            }
        }
    }
    return subgroups.size();
}

}  // namespace nets
