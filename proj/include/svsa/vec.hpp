#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace svsa {

using Vec = std::vector<double>;

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(double s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

// r = a + s*b
inline Vec axpy(const Vec& a, double s, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
}

inline void axpy_inplace(Vec& a, double s, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

inline double dot(const Vec& a, const Vec& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double dist2(const Vec& a, const Vec& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        r += d * d;
    }
    return std::sqrt(r);
}

inline double max_abs(const Vec& a) {
    double r = 0.0;
    for (double v : a) r = std::max(r, std::abs(v));
    return r;
}

inline bool all_finite(const Vec& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

inline Vec zeros(std::size_t d) { return Vec(d, 0.0); }

inline Vec ones(std::size_t d) { return Vec(d, 1.0); }

inline Vec unit(std::size_t d, std::size_t i, double v = 1.0) {
    Vec r(d, 0.0);
    r.at(i) = v;
    return r;
}

inline void require_dim(const Vec& a, std::size_t d, const char* what) {
    if (a.size() != d)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch, expected " +
                                    std::to_string(d) + ", got " + std::to_string(a.size()));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

} // namespace svsa
