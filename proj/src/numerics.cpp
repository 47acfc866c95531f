#include "banachlab/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace banachlab {

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          int iters, double* arg_out) {
    const double phi = 0.6180339887498949;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    double xm = 0.5 * (a + b);
    if (arg_out) *arg_out = xm;
    return f(xm);
}

std::vector<Vec> direction_set(int dim, int count) {
    std::vector<Vec> dirs;
    auto push = [&](Vec v) {
        double n = l2_norm(v);
        if (n < 1e-12) return;
        dirs.push_back(scale(v, 1.0 / n));
    };
    for (int i = 0; i < dim; ++i) {
        Vec e(static_cast<std::size_t>(dim), 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        push(e);
        e[static_cast<std::size_t>(i)] = -1.0;
        push(e);
    }
    // +-{0,1} lattice directions (skip once this gets large).
    if (dim <= 8) {
        long total = 1;
        for (int i = 0; i < dim; ++i) total *= 3;
        for (long code = 1; code < total; ++code) {
            long c = code;
            Vec v(static_cast<std::size_t>(dim), 0.0);
            for (int i = 0; i < dim; ++i) {
                int digit = static_cast<int>(c % 3);
                c /= 3;
                v[static_cast<std::size_t>(i)] = digit == 2 ? -1.0 : static_cast<double>(digit);
            }
            push(v);
        }
    }
    Rng rng(0xd1ce'0000'0000'0042ULL + static_cast<std::uint64_t>(dim));
    while (static_cast<int>(dirs.size()) < count) {
        Vec v(static_cast<std::size_t>(dim));
        for (double& x : v) x = rng.gaussian();
        push(v);
    }
    return dirs;
}

void coordinate_polish(std::vector<double>& vars, double step0, int iters,
                       const std::function<double(const std::vector<double>&)>& objective,
                       const std::function<bool(const std::vector<double>&)>& feasible) {
    double best = objective(vars);
    double step = step0;
    std::vector<double> trial = vars;
    for (int it = 0; it < iters; ++it) {
        bool improved = false;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            for (double s : {step, -step}) {
                trial = vars;
                trial[k] += s;
                if (!feasible(trial)) continue;
                double v = objective(trial);
                if (v < best - 1e-15) {
                    best = v;
                    vars = trial;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
}

}  // namespace banachlab
