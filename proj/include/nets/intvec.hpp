#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>

namespace nets {

// Integer 3-vector: edge labels, lattice vectors, discrete-torus points.
struct IntVec3 {
    int64_t x = 0, y = 0, z = 0;

    constexpr int64_t operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    int64_t& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    friend constexpr IntVec3 operator+(IntVec3 a, IntVec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr IntVec3 operator-(IntVec3 a, IntVec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr IntVec3 operator-(IntVec3 a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr IntVec3 operator*(int64_t s, IntVec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr bool operator==(IntVec3 a, IntVec3 b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
    friend constexpr bool operator!=(IntVec3 a, IntVec3 b) { return !(a == b); }
    friend constexpr bool operator<(IntVec3 a, IntVec3 b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    }

    constexpr bool is_zero() const { return x == 0 && y == 0 && z == 0; }
    int64_t max_abs() const { return std::max({std::abs(x), std::abs(y), std::abs(z)}); }
};

inline int64_t dot(IntVec3 a, IntVec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline IntVec3 cross(IntVec3 a, IntVec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline int64_t gcd3(IntVec3 v) {
    return std::gcd(std::gcd(std::abs(v.x), std::abs(v.y)), std::abs(v.z));
}

// True when the entries are coprime (a primitive lattice vector).
inline bool is_primitive(IntVec3 v) { return gcd3(v) == 1; }

// Lexicographically nonnegative representative of {v, -v}.
inline IntVec3 sign_canonical(IntVec3 v) {
    if (v.x != 0) return v.x > 0 ? v : -v;
    if (v.y != 0) return v.y > 0 ? v : -v;
    return v.z >= 0 ? v : -v;
}

inline std::string to_string(IntVec3 v) {
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + "," + std::to_string(v.z) + ")";
}

// Row-major 3x3 integer matrix acting on column vectors.
struct IntMat3 {
    std::array<std::array<int64_t, 3>, 3> m{};

    static constexpr IntMat3 identity() {
        IntMat3 r;
        r.m = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        return r;
    }

    int64_t det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    bool is_unimodular() const { return std::abs(det()) == 1; }

    IntVec3 apply(IntVec3 v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    friend IntMat3 operator*(const IntMat3& a, const IntMat3& b) {
        IntMat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int64_t s = 0;
                for (int k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    friend bool operator==(const IntMat3& a, const IntMat3& b) { return a.m == b.m; }
    friend bool operator<(const IntMat3& a, const IntMat3& b) { return a.m < b.m; }

    int64_t max_abs() const {
        int64_t r = 0;
        for (auto& row : m)
            for (auto v : row) r = std::max(r, std::abs(v));
        return r;
    }
};

// The 48 signed permutation matrices; the first 24 returned have det +1.
std::array<IntMat3, 48> signed_permutation_matrices();

// The 12 elementary shears: identity with a single off-diagonal entry of +-1.
std::array<IntMat3, 12> elementary_shears();

}  // namespace nets

template <>
struct std::hash<nets::IntVec3> {
    size_t operator()(const nets::IntVec3& v) const {
        size_t h = std::hash<int64_t>()(v.x);
        h = h * 1000003u ^ std::hash<int64_t>()(v.y);
        h = h * 1000003u ^ std::hash<int64_t>()(v.z);
        return h;
    }
};
