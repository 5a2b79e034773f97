#include "nets/snf.hpp"

#include <cassert>
#include <cstdlib>

namespace nets {

namespace {

struct WorkMat {
    std::vector<std::array<int64_t, 3>> a;
    std::vector<std::vector<int64_t>> left;
    IntMat3 right = IntMat3::identity();

    size_t rows() const { return a.size(); }

    void swap_rows(size_t i, size_t j) {
        std::swap(a[i], a[j]);
        std::swap(left[i], left[j]);
    }
    void swap_cols(int i, int j) {
        for (auto& r : a) std::swap(r[i], r[j]);
        for (auto& r : right.m) std::swap(r[i], r[j]);
    }
    void negate_row(size_t i) {
        for (auto& v : a[i]) v = -v;
        for (auto& v : left[i]) v = -v;
    }
    // row i -= f * row j
    void add_row(size_t i, size_t j, int64_t f) {
        for (int c = 0; c < 3; ++c) a[i][c] -= f * a[j][c];
        for (size_t c = 0; c < left.size(); ++c) left[i][c] -= f * left[j][c];
    }
    // col i -= f * col j
    void add_col(int i, int j, int64_t f) {
        for (auto& r : a) r[i] -= f * r[j];
        for (auto& r : right.m) r[i] -= f * r[j];
    }
};

bool find_pivot(const WorkMat& w, size_t s, size_t& pi, int& pj) {
    int64_t best = 0;
    bool found = false;
    for (size_t i = s; i < w.rows(); ++i)
        for (int j = (int)s; j < 3; ++j) {
            int64_t v = std::abs(w.a[i][j]);
            if (v != 0 && (!found || v < best)) {
                best = v;
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

}  // namespace

SmithResult smith_normal_form(const std::vector<IntVec3>& rows) {
    WorkMat w;
    size_t m = rows.size();
    w.a.resize(m);
    for (size_t i = 0; i < m; ++i) w.a[i] = {rows[i].x, rows[i].y, rows[i].z};
    w.left.assign(m, std::vector<int64_t>(m, 0));
    for (size_t i = 0; i < m; ++i) w.left[i][i] = 1;

    size_t nmin = std::min<size_t>(m, 3);
    for (size_t s = 0; s < nmin; ++s) {
        size_t pi;
        int pj;
        if (!find_pivot(w, s, pi, pj)) break;
        w.swap_rows(s, pi);
        w.swap_cols((int)s, pj);

        for (;;) {
            bool reduced = true;
            for (size_t i = s + 1; i < m; ++i)
                if (w.a[i][s] != 0) {
                    w.add_row(i, s, w.a[i][s] / w.a[s][s]);
                    if (w.a[i][s] != 0) {
                        w.swap_rows(s, i);
                        reduced = false;
                    }
                }
            for (int j = (int)s + 1; j < 3; ++j)
                if (w.a[s][j] != 0) {
                    w.add_col(j, (int)s, w.a[s][j] / w.a[s][s]);
                    if (w.a[s][j] != 0) {
                        w.swap_cols((int)s, j);
                        reduced = false;
                    }
                }
            if (reduced) break;
        }

        // Divisibility fix-up: the pivot must divide the remaining block.
        bool redo = false;
        for (size_t i = s + 1; i < m && !redo; ++i)
            for (int j = (int)s + 1; j < 3 && !redo; ++j)
                if (w.a[i][j] % w.a[s][s] != 0) {
                    w.add_row(s, i, -1);
                    redo = true;
                }
        if (redo) {
            --s;
            continue;
        }
        if (w.a[s][s] < 0) w.negate_row(s);
    }

    SmithResult r;
    for (size_t i = 0; i < nmin; ++i) {
        r.factors[i] = i < m ? std::abs(w.a[i][i]) : 0;
        if (r.factors[i] != 0) ++r.rank;
    }
    r.left = std::move(w.left);
    r.right = w.right;
    return r;
}

int lattice_rank(const std::vector<IntVec3>& rows) { return smith_normal_form(rows).rank; }

}  // namespace nets
