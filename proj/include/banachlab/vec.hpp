#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace banachlab {

/// Coordinate vector in R^n. All entries must be finite.
using Vec = std::vector<double>;

/// Dual vector acting on Vec by the standard dot-product pairing.
struct Functional {
    Vec coords;

    Functional() = default;
    explicit Functional(Vec c) : coords(std::move(c)) {}

    std::size_t dim() const { return coords.size(); }

    double operator()(const Vec& v) const;
};

void ensure_finite(const Vec& v, const char* what);
void ensure_dim(const Vec& v, std::size_t dim, const char* what);

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double l1_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

inline double l2_norm_sq(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

inline double l2_norm(const Vec& v) { return std::sqrt(l2_norm_sq(v)); }

inline double linf_norm(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, double t);
/// a + t*b
Vec axpy(const Vec& a, double t, const Vec& b);

bool is_zero(const Vec& v, double tol = 0.0);

std::string to_string(const Vec& v);

}  // namespace banachlab
