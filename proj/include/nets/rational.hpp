#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "nets/intvec.hpp"

namespace nets {

// Exact rational with int64 storage and 128-bit intermediates.
// Always normalized: den > 0, gcd(num, den) = 1.
class Rat {
public:
    constexpr Rat() = default;
    Rat(int64_t n) : num_(n), den_(1) {}
    Rat(int64_t n, int64_t d) : num_(n), den_(d) { normalize(); }

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }

    friend Rat operator+(Rat a, Rat b) {
        return from128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_, (__int128)a.den_ * b.den_);
    }
    friend Rat operator-(Rat a, Rat b) {
        return from128((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_, (__int128)a.den_ * b.den_);
    }
    friend Rat operator*(Rat a, Rat b) { return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_); }
    friend Rat operator/(Rat a, Rat b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    friend Rat operator-(Rat a) { return Rat(-a.num_, a.den_); }

    Rat& operator+=(Rat o) { return *this = *this + o; }
    Rat& operator-=(Rat o) { return *this = *this - o; }
    Rat& operator*=(Rat o) { return *this = *this * o; }

    friend bool operator==(Rat a, Rat b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(Rat a, Rat b) { return !(a == b); }
    friend bool operator<(Rat a, Rat b) { return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_; }
    friend bool operator<=(Rat a, Rat b) { return (__int128)a.num_ * b.den_ <= (__int128)b.num_ * a.den_; }
    friend bool operator>(Rat a, Rat b) { return b < a; }
    friend bool operator>=(Rat a, Rat b) { return b <= a; }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
    bool is_integer() const { return den_ == 1; }

    // Largest integer <= value.
    int64_t floor() const {
        int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    double to_double() const { return double(num_) / double(den_); }

    // "p/q", or "p" when the value is an integer.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p" or "p/q" with q > 0.
    static Rat parse(const std::string& s);

private:
    int64_t num_ = 0;
    int64_t den_ = 1;

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        int64_t g = std::gcd(std::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static Rat from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr __int128 lim = INT64_MAX;
        if (n > lim || n < -lim || d > lim) throw std::overflow_error("rational overflow");
        Rat r;
        r.num_ = (int64_t)n;
        r.den_ = (int64_t)d;
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
};

struct Rat3 {
    Rat x, y, z;

    Rat operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    friend Rat3 operator+(const Rat3& a, const Rat3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Rat3 operator-(const Rat3& a, const Rat3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Rat3 operator*(Rat s, const Rat3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Rat3& a, const Rat3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
    friend bool operator!=(const Rat3& a, const Rat3& b) { return !(a == b); }

    bool is_zero() const { return x.sign() == 0 && y.sign() == 0 && z.sign() == 0; }

    static Rat3 from(IntVec3 v) { return {Rat(v.x), Rat(v.y), Rat(v.z)}; }
};

inline Rat dot(const Rat3& a, const Rat3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Rat3 cross(const Rat3& a, const Rat3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Componentwise fractional part, in [0,1).
inline Rat3 mod1(const Rat3& p) {
    return {p.x - Rat(p.x.floor()), p.y - Rat(p.y.floor()), p.z - Rat(p.z.floor())};
}

}  // namespace nets
