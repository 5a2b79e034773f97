#include "nets/intvec.hpp"

#include <cassert>

namespace nets {

std::array<IntMat3, 48> signed_permutation_matrices() {
    std::array<IntMat3, 48> out;
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    int nproper = 0, nimproper = 24;
    for (auto& p : perms)
        for (int sgn = 0; sgn < 8; ++sgn) {
            IntMat3 q;
            for (int i = 0; i < 3; ++i) q.m[i][p[i]] = (sgn >> i & 1) ? -1 : 1;
            (q.det() == 1 ? out[nproper++] : out[nimproper++]) = q;
        }
    assert(nproper == 24 && nimproper == 48);
    return out;
}

std::array<IntMat3, 12> elementary_shears() {
    std::array<IntMat3, 12> out;
    int n = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            for (int s : {1, -1}) {
                IntMat3 z = IntMat3::identity();
                z.m[i][j] = s;
                out[n++] = z;
            }
        }
    return out;
}

}  // namespace nets
