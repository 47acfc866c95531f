#include "banachlab/normcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "banachlab/numerics.hpp"

namespace banachlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0) w += kTwoPi;
    return w;
}

Vec normalize2e(const Vec& v) { return scale(v, 1.0 / l2_norm(v)); }

}  // namespace

double norm_eval(const NormedSpace& space, const Vec& v) { return space.norm(v); }

EquivalenceEstimate equivalence_constants(const NormedSpace& space, const Resolution& res) {
    EquivalenceEstimate out;
    if (space.dim() == 2) {
        int n = std::max(res.angles, 64);
        double h = kTwoPi / n;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int k = 0; k < n; ++k) {
            double g = space.norm_unchecked(unit_direction(k * h));
            lo = std::min(lo, g);
            hi = std::max(hi, g);
        }
        // |g(a)-g(b)| <= C_true |a-b| on the Euclidean sphere, so the grid max
        // under-estimates C_true by at most C_true*h/2.
        double C_cert = hi / (1.0 - h / 2.0);
        double c_cert = std::max(lo - C_cert * h / 2.0, 1e-300);
        out.lo = c_cert;
        out.hi = C_cert;
        out.certified = true;
        return out;
    }
    auto dirs = direction_set(space.dim(), std::max(res.angles, 128));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& d : dirs) {
        double g = space.norm_unchecked(d);
        lo = std::min(lo, g);
        hi = std::max(hi, g);
    }
    out.lo = lo;
    out.hi = hi;
    out.certified = false;
    return out;
}

// ---------------------------------------------------------------------------
// dual norm

DualNormEstimate dual_norm(const NormedSpace& space, const Functional& f, const Resolution& res) {
    ensure_dim(f.coords, static_cast<std::size_t>(space.dim()), "dual_norm functional");
    ensure_finite(f.coords, "dual_norm functional");
    DualNormEstimate out;
    out.resolution.angles = res.angles;
    out.resolution.refine_iters = res.refine_iters;

    if (is_zero(f.coords)) {
        out.lo = out.hi = 0.0;
        out.certified = true;
        out.witness = Vec(static_cast<std::size_t>(space.dim()), 0.0);
        out.resolution.method = "zero functional";
        return out;
    }

    if (space.dim() == 2) {
        Boundary2D bd(space, res.angles);
        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < bd.size(); ++i) {
            double v = dot(f.coords, bd.point(i));
            if (v > best) {
                best = v;
                best_i = i;
            }
        }
        Lipschitz2D lip = Lipschitz2D::of(space);
        double slack = l2_norm(f.coords) * lip.boundary_speed * bd.max_gap() / 2.0;
        out.hi = best + slack;
        // Golden polish around the best grid angle.
        double a = bd.angle(best_i) - bd.max_gap();
        double b = bd.angle(best_i) + bd.max_gap();
        double arg = bd.angle(best_i);
        golden_section_min(
            [&](double th) { return -dot(f.coords, boundary_point(space, th)); }, a, b,
            res.refine_iters, &arg);
        Vec w = boundary_point(space, arg);
        double polished = dot(f.coords, w);
        if (polished >= best) {
            out.lo = polished;
            out.witness = w;
        } else {
            out.lo = best;
            out.witness = bd.point(best_i);
        }
        out.certified = lip.certified;
        out.resolution.method = "2d boundary grid + lipschitz";
        return out;
    }

    // dim >= 3: sampled directions, heuristic upper bound.
    auto dirs = direction_set(space.dim(), std::max(res.angles, 256));
    double best = -std::numeric_limits<double>::infinity();
    Vec bw;
    for (const auto& d : dirs) {
        double g = space.norm_unchecked(d);
        double v = dot(f.coords, d) / g;
        if (v > best) {
            best = v;
            bw = scale(d, 1.0 / g);
        }
    }
    // Coordinate polish on the ray direction.
    std::vector<double> vars = bw;
    coordinate_polish(
        vars, 0.05, res.refine_iters,
        [&](const std::vector<double>& v) {
            double g = space.norm_unchecked(v);
            if (g < 1e-12) return std::numeric_limits<double>::infinity();
            return -dot(f.coords, v) / g;
        },
        [](const std::vector<double>&) { return true; });
    double g = space.norm_unchecked(vars);
    if (g > 1e-12 && dot(f.coords, vars) / g > best) {
        best = dot(f.coords, vars) / g;
        bw = scale(vars, 1.0 / g);
    }
    out.lo = best;
    out.hi = best * (1.0 + 2e-3);  // heuristic margin, not a certificate
    out.certified = false;
    out.witness = bw;
    out.resolution.method = "sampled directions (heuristic)";
    return out;
}

// ---------------------------------------------------------------------------
// boundary tangents / subdifferential

TangentPair boundary_tangents_2d(const NormedSpace& space, double theta) {
    if (space.dim() != 2) throw std::invalid_argument("boundary_tangents_2d: dim must be 2");
    if (space.has_geometry()) return space.geometry().tangents(theta);

    auto one_sided = [&](double sign) {
        // Richardson-extrapolated one-sided difference of the boundary curve.
        const double h1 = 1e-5, h2 = 5e-6;
        Vec b0 = boundary_point(space, theta);
        Vec d1 = scale(sub(boundary_point(space, theta + sign * h1), b0), 1.0 / h1);
        Vec d2 = scale(sub(boundary_point(space, theta + sign * h2), b0), 1.0 / h2);
        Vec t = sub(scale(d2, 2.0), d1);
        return scale(normalize2e(t), sign);
    };
    return TangentPair{one_sided(-1.0), one_sided(+1.0)};
}

namespace {

// Supporting functional at boundary point p with ccw tangent t.
Functional support_from_tangent(const Vec& p, const Vec& t) {
    Vec n = {t[1], -t[0]};  // outward normal for ccw traversal
    double s = dot(n, p);
    if (s <= 0) {
        n = scale(n, -1.0);
        s = -s;
    }
    return Functional(scale(n, 1.0 / s));
}

}  // namespace

Subdifferential subdifferential(const NormedSpace& space, const Vec& x, const Resolution& res) {
    double nx = space.norm(x);
    if (nx < 1e-10) throw std::invalid_argument("subdifferential: zero vector");
    if (std::abs(nx - 1.0) > 1e-6) {
        throw std::invalid_argument("subdifferential: x must lie on the unit sphere");
    }
    Subdifferential sd;
    sd.base = x;

    if (space.dim() == 2) {
        double theta = std::atan2(x[1], x[0]);
        TangentPair tp = boundary_tangents_2d(space, theta);
        Functional fin = support_from_tangent(x, tp.incoming);
        Functional fout = support_from_tangent(x, tp.outgoing);
        sd.members.push_back(fin);
        double gap = linf_norm(sub(fout.coords, fin.coords));
        if (gap > 1e-9) sd.members.push_back(fout);
        sd.exact = space.has_geometry() && space.geometry().exact;
        return sd;
    }

    // dim >= 3: sampled subgradients (analytic when present, else numeric
    // gradients at x and at small perturbations).
    sd.exact = false;
    auto push_unique = [&](Functional f) {
        for (const auto& g : sd.members) {
            if (linf_norm(sub(g.coords, f.coords)) < 1e-8) return;
        }
        sd.members.push_back(std::move(f));
    };
    if (space.has_subgrad()) push_unique(space.subgrad(x));
    auto numeric_grad = [&](const Vec& at) {
        const double h = 1e-6;
        Vec g(at.size());
        for (std::size_t i = 0; i < at.size(); ++i) {
            Vec p = at, m = at;
            p[i] += h;
            m[i] -= h;
            g[i] = (space.norm_unchecked(p) - space.norm_unchecked(m)) / (2 * h);
        }
        return g;
    };
    {
        Vec g = numeric_grad(x);
        double fx = dot(g, x);
        if (fx > 0.5) push_unique(Functional(scale(g, nx / fx)));
    }
    const double delta = 1e-4;
    for (std::size_t j = 0; j < x.size(); ++j) {
        for (double s : {delta, -delta}) {
            Vec p = x;
            p[j] += s;
            double np = space.norm_unchecked(p);
            Vec g = numeric_grad(scale(p, 1.0 / np));
            double fx = dot(g, x);
            if (fx > 1.0 - 1e-4) push_unique(Functional(scale(g, nx / fx)));
            (void)res;
        }
    }
    return sd;
}

Functional norming_functional(const NormedSpace& space, const Vec& x, const Resolution& res) {
    double nx = space.norm(x);
    if (nx < 1e-10) throw std::invalid_argument("norming_functional: zero vector");
    Vec xhat = scale(x, 1.0 / nx);

    if (space.has_subgrad()) return space.subgrad(x);

    if (space.dim() == 2) {
        Subdifferential sd = subdifferential(space, xhat, res);
        const Functional* best = &sd.members.front();
        for (const auto& f : sd.members) {
            if (f.coords < best->coords) best = &f;  // lexicographic tie-break
        }
        return *best;
    }

    // dim >= 3: numeric gradient selection.
    Subdifferential sd = subdifferential(space, xhat, res);
    if (sd.members.empty()) throw std::runtime_error("norming_functional: no candidate found");
    const Functional* best = &sd.members.front();
    double best_val = -2.0;
    for (const auto& f : sd.members) {
        double v = f(xhat);
        if (v > best_val + 1e-12 || (v > best_val - 1e-12 && f.coords < best->coords)) {
            best = &f;
            best_val = v;
        }
    }
    return *best;
}

double smoothness_gap(const NormedSpace& space, const Vec& x, const Vec& y,
                      std::vector<double> t_schedule) {
    if (std::abs(space.norm(x) - 1.0) > 1e-6 || std::abs(space.norm(y) - 1.0) > 1e-6) {
        throw std::invalid_argument("smoothness_gap: x and y must be unit vectors");
    }
    if (t_schedule.empty()) t_schedule = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
    std::sort(t_schedule.begin(), t_schedule.end(), std::greater<double>());
    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (double t : t_schedule) {
        double g = (space.norm_unchecked(axpy(x, t, y)) + space.norm_unchecked(axpy(x, -t, y)) - 2.0) / t;
        // The convex difference quotient is nonincreasing as t decreases; the
        // tolerance absorbs the ~eps/t rounding of the numerator.
        if (g > prev + 1e-9 + 16.0 * std::numeric_limits<double>::epsilon() / t) {
            throw std::runtime_error("smoothness_gap: difference quotient not monotone (evaluator bug?)");
        }
        prev = g;
        last = g;
    }
    return std::max(last, 0.0);
}

// ---------------------------------------------------------------------------
// dual space

namespace {

struct DualTable {
    std::vector<Vec> points;  // primal boundary points, sorted by angle (2D)
    double factor = 1.0;      // midpoint-of-enclosure scale
    int coarse = 256;

    double support(const Vec& f) const {
        // Circularly unimodal sequence k -> f . points[k]; coarse scan plus a
        // full scan of the bracketing window.
        std::size_t n = points.size();
        std::size_t step = std::max<std::size_t>(1, n / static_cast<std::size_t>(coarse));
        double best = -std::numeric_limits<double>::infinity();
        std::size_t bi = 0;
        for (std::size_t k = 0; k < n; k += step) {
            double v = dot(f, points[k]);
            if (v > best) {
                best = v;
                bi = k;
            }
        }
        std::size_t lo = bi + n - step, hi = bi + step;
        for (std::size_t k = lo; k <= hi; ++k) {
            double v = dot(f, points[k % n]);
            if (v > best) best = v;
        }
        return best;
    }

    double support_full(const Vec& f) const {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& p : points) best = std::max(best, dot(f, p));
        return best;
    }
};

}  // namespace

NormedSpace dual_space(const NormedSpace& space, const Resolution& res) {
    auto table = std::make_shared<DualTable>();

    if (space.dim() == 2) {
        Boundary2D bd(space, res.dual_points);
        table->points.reserve(bd.size());
        for (std::size_t i = 0; i < bd.size(); ++i) table->points.push_back(bd.point(i));
        Lipschitz2D lip = Lipschitz2D::of(space);
        double kappa = lip.C * lip.boundary_speed * bd.max_gap() / 2.0;
        if (kappa >= 0.5) kappa = 0.5;
        table->factor = 1.0 + kappa / (2.0 * (1.0 - kappa));

        SpaceDef def;
        def.dim = 2;
        def.evaluator = [table](const Vec& f) { return table->factor * table->support(f); };
        def.equiv_lo = table->factor * (1.0 - kappa) / lip.C;
        def.equiv_hi = table->factor / lip.c;
        def.equiv_certified = lip.certified;
        def.label = space.label() + "*";
        return NormedSpace(std::move(def));
    }

    int count = std::min(res.dual_points, 4096);
    auto dirs = direction_set(space.dim(), count);
    table->points.reserve(dirs.size());
    for (const auto& d : dirs) {
        table->points.push_back(scale(d, 1.0 / space.norm_unchecked(d)));
    }
    SpaceDef def;
    def.dim = space.dim();
    def.evaluator = [table](const Vec& f) { return table->support_full(f); };
    def.equiv_lo = 1.0 / space.equiv_hi();
    def.equiv_hi = 1.0 / space.equiv_lo();
    def.equiv_certified = false;  // sampled boundary only
    def.label = space.label() + "*";
    return NormedSpace(std::move(def));
}

// ---------------------------------------------------------------------------
// quotient space

namespace {

std::vector<Vec> gram_schmidt(const std::vector<Vec>& vs, double tol) {
    std::vector<Vec> out;
    for (const auto& v : vs) {
        Vec w = v;
        for (const auto& u : out) w = axpy(w, -dot(w, u), u);
        double n = l2_norm(w);
        if (n > tol) out.push_back(scale(w, 1.0 / n));
    }
    return out;
}

}  // namespace

NormedSpace quotient_space(const NormedSpace& space, const std::vector<Vec>& subspace_basis,
                           const Resolution& res) {
    const int dim = space.dim();
    if (subspace_basis.empty()) throw std::invalid_argument("quotient_space: empty basis");
    for (const auto& b : subspace_basis) {
        ensure_dim(b, static_cast<std::size_t>(dim), "quotient basis vector");
        ensure_finite(b, "quotient basis vector");
    }
    auto U = gram_schmidt(subspace_basis, 1e-10);
    if (U.size() != subspace_basis.size()) {
        throw std::invalid_argument("quotient_space: basis is linearly dependent");
    }
    if (static_cast<int>(U.size()) >= dim) {
        throw std::invalid_argument("quotient_space: subspace must be proper");
    }
    // Orthonormal complement, deterministic completion by coordinate vectors.
    std::vector<Vec> withId = U;
    for (int i = 0; i < dim; ++i) {
        Vec e(static_cast<std::size_t>(dim), 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        withId.push_back(e);
    }
    auto full = gram_schmidt(withId, 1e-10);
    std::vector<Vec> W(full.begin() + static_cast<long>(U.size()), full.end());
    const int qdim = dim - static_cast<int>(U.size());
    if (static_cast<int>(W.size()) != qdim) throw std::runtime_error("quotient_space: complement failed");

    auto lift = [W, dim](const Vec& v) {
        Vec x(static_cast<std::size_t>(dim), 0.0);
        for (std::size_t j = 0; j < W.size(); ++j) x = axpy(x, v[j], W[j]);
        return x;
    };

    const double cX = space.equiv_lo(), CX = space.equiv_hi();
    const int k = static_cast<int>(U.size());
    const int gold_iters = 90;
    auto evaluator = [space, U, lift, cX, CX, k](const Vec& v) -> double {
        Vec x0 = lift(v);
        double R = l2_norm(x0) * (1.0 + CX / cX) + 1e-12;
        if (k == 1) {
            const Vec& u = U[0];
            return golden_section_min(
                [&](double t) { return space.norm_unchecked(axpy(x0, -t, u)); }, -R, R, 90);
        }
        // Coordinate descent with golden line searches; convex objective.
        Vec c(static_cast<std::size_t>(k), 0.0);
        auto val = [&](const Vec& cc) {
            Vec x = x0;
            for (int j = 0; j < k; ++j) x = axpy(x, -cc[static_cast<std::size_t>(j)], U[static_cast<std::size_t>(j)]);
            return space.norm_unchecked(x);
        };
        double cur = val(c);
        auto line_search = [&](const Vec& dir) {
            double tj = 0.0;
            Vec base = c;
            golden_section_min(
                [&](double t) {
                    Vec cc = base;
                    for (int j = 0; j < k; ++j) cc[static_cast<std::size_t>(j)] += t * dir[static_cast<std::size_t>(j)];
                    return val(cc);
                },
                -R, R, gold_iters, &tj);
            Vec cc = base;
            for (int j = 0; j < k; ++j) cc[static_cast<std::size_t>(j)] += tj * dir[static_cast<std::size_t>(j)];
            double v2 = val(cc);
            if (v2 < cur) {
                cur = v2;
                c = cc;
            }
        };
        Vec ej(static_cast<std::size_t>(k), 0.0);
        for (int round = 0; round < 8; ++round) {
            for (int j = 0; j < k; ++j) {
                std::fill(ej.begin(), ej.end(), 0.0);
                ej[static_cast<std::size_t>(j)] = 1.0;
                line_search(ej);
            }
            // Fixed diagonal directions help past nonsmooth kinks.
            Rng rng(0x0617'0000'0000'0001ULL + static_cast<std::uint64_t>(round));
            for (int extra = 0; extra < 2; ++extra) {
                Vec d(static_cast<std::size_t>(k));
                for (double& x : d) x = rng.gaussian();
                double n2 = l2_norm(d);
                if (n2 > 1e-12) line_search(scale(d, 1.0 / n2));
            }
        }
        return cur;
    };
    (void)res;

    SpaceDef def;
    def.dim = qdim;
    def.evaluator = evaluator;
    def.equiv_lo = cX;
    def.equiv_hi = CX;
    def.equiv_certified = space.equiv_certified();
    def.label = space.label() + "/U" + std::to_string(k);
    return NormedSpace(std::move(def));
}

// ---------------------------------------------------------------------------
// special angle detection

std::vector<double> detect_special_angles_2d(const NormedSpace& space, int scan_angles) {
    if (space.dim() != 2) throw std::invalid_argument("detect_special_angles_2d: dim must be 2");
    if (space.has_geometry()) return space.special_angles();

    // Secant-turn spikes mark corners; bisection refines them.
    int n = std::max(scan_angles, 256);
    double h = kTwoPi / n;
    std::vector<Vec> pts(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) pts[static_cast<std::size_t>(k)] = boundary_point(space, k * h);
    auto turn = [&](const Vec& a, const Vec& b, const Vec& c) {
        Vec s1 = normalize2e(sub(b, a)), s2 = normalize2e(sub(c, b));
        return std::abs(s1[0] * s2[1] - s1[1] * s2[0]);
    };
    std::vector<double> out;
    for (int k = 0; k < n; ++k) {
        const Vec& a = pts[static_cast<std::size_t>((k + n - 1) % n)];
        const Vec& b = pts[static_cast<std::size_t>(k)];
        const Vec& c = pts[static_cast<std::size_t>((k + 1) % n)];
        double t0 = turn(a, b, c);
        if (t0 < 50.0 * h) continue;  // smooth-arc turning is O(h)
        // Corner near angle k*h: bisection keeps the half whose interior
        // secant turn dominates (the kink carries the turn mass).
        double lo = (k - 1) * h, hi = (k + 1) * h;
        for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
            double mid = 0.5 * (lo + hi);
            Vec pl = boundary_point(space, lo), pm = boundary_point(space, mid),
                ph = boundary_point(space, hi);
            Vec pml = boundary_point(space, 0.5 * (lo + mid));
            Vec pmh = boundary_point(space, 0.5 * (mid + hi));
            double left_turn = turn(pl, pml, pm);
            double right_turn = turn(pm, pmh, ph);
            if (left_turn >= right_turn) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        double corner = wrap_angle(0.5 * (lo + hi));
        bool dup = false;
        for (double c2 : out) {
            if (std::abs(c2 - corner) < 4 * h) dup = true;
        }
        if (!dup) out.push_back(corner);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace banachlab
