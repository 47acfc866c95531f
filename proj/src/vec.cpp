#include "banachlab/vec.hpp"

#include <sstream>

namespace banachlab {

double Functional::operator()(const Vec& v) const {
    ensure_dim(v, coords.size(), "functional argument");
    return dot(coords, v);
}

void ensure_finite(const Vec& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
    }
}

void ensure_dim(const Vec& v, std::size_t dim, const char* what) {
    if (v.size() != dim) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (got " +
                                    std::to_string(v.size()) + ", want " + std::to_string(dim) + ")");
    }
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scale(const Vec& a, double t) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * t;
    return r;
}

Vec axpy(const Vec& a, double t, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * b[i];
    return r;
}

bool is_zero(const Vec& v, double tol) {
    for (double x : v) {
        if (std::abs(x) > tol) return false;
    }
    return true;
}

std::string to_string(const Vec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    os << ")";
    return os.str();
}

}  // namespace banachlab
