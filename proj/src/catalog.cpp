#include "banachlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace banachlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;

double lp_eval(const Vec& x, double p) {
    if (p == 1.0) return l1_norm(x);
    if (p == 2.0) return l2_norm(x);
    if (std::isinf(p)) return linf_norm(x);
    double m = linf_norm(x);
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) s += std::pow(std::abs(v) / m, p);
    return m * std::pow(s, 1.0 / p);
}

Functional lp_subgrad(const Vec& x, double p) {
    // f_i = sign(x_i) |x_i/|x||^{p-1}, valid selection for 1 < p < inf.
    double n = lp_eval(x, p);
    Vec f(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0.0) {
            double s = x[i] > 0 ? 1.0 : -1.0;
            f[i] = s * std::pow(std::abs(x[i]) / n, p - 1.0);
        }
    }
    return Functional(std::move(f));
}

Vec normalize2(const Vec& v) { return scale(v, 1.0 / l2_norm(v)); }

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0) w += kTwoPi;
    return w;
}

// Exact one-sided tangents of the l1 / linf unit spheres in R^2, ccw.
TangentPair l1_tangents_2d(double theta) {
    const double q = kPi / 2;
    auto seg_tangent = [](int quadrant) -> Vec {
        switch (quadrant & 3) {
            case 0: return normalize2({-1.0, 1.0});
            case 1: return normalize2({-1.0, -1.0});
            case 2: return normalize2({1.0, -1.0});
            default: return normalize2({1.0, 1.0});
        }
    };
    double w = wrap_angle(theta);
    double k = w / q;
    long kk = std::lround(k);
    if (std::abs(k - kk) < 1e-11) {  // corner at a coordinate axis
        int corner = static_cast<int>(((kk % 4) + 4) % 4);
        return TangentPair{seg_tangent(corner + 3), seg_tangent(corner)};
    }
    int quadrant = static_cast<int>(std::floor(k)) & 3;
    Vec t = seg_tangent(quadrant);
    return TangentPair{t, t};
}

TangentPair linf_tangents_2d(double theta) {
    auto face_tangent = [](int face) -> Vec {
        switch (face & 3) {
            case 0: return {0.0, 1.0};   // x = 1
            case 1: return {-1.0, 0.0};  // y = 1
            case 2: return {0.0, -1.0};  // x = -1
            default: return {1.0, 0.0};  // y = -1
        }
    };
    const double q = kPi / 2;
    double w = wrap_angle(theta + kPi / 4);  // corners now at multiples of pi/2
    double k = w / q;
    long kk = std::lround(k);
    if (std::abs(k - kk) < 1e-11) {
        int corner = static_cast<int>(((kk % 4) + 4) % 4);
        return TangentPair{face_tangent(corner + 3), face_tangent(corner)};
    }
    int face = static_cast<int>(std::floor(k)) & 3;
    Vec t = face_tangent(face);
    return TangentPair{t, t};
}

TangentPair lp_smooth_tangents_2d(double theta, double p) {
    Vec b = {std::cos(theta), std::sin(theta)};
    double g = lp_eval(b, p);
    b = scale(b, 1.0 / g);
    Functional n = lp_subgrad(b, p);
    Vec t = normalize2({-n.coords[1], n.coords[0]});
    return TangentPair{t, t};
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

// ---------------------------------------------------------------------------

NormedSpace build_lp(int n, double p) {
    if (n < 1) throw std::invalid_argument("build_lp: n must be >= 1");
    if (!(p >= 1.0)) throw std::invalid_argument("build_lp: p must be >= 1");

    SpaceDef def;
    def.dim = n;
    def.evaluator = [p](const Vec& x) { return lp_eval(x, p); };
    if (p > 1.0 && !std::isinf(p)) {
        def.subgrad = [p](const Vec& x) { return lp_subgrad(x, p); };
    }
    // Sharp Euclidean equivalence constants.
    if (p <= 2.0) {
        def.equiv_lo = 1.0;
        def.equiv_hi = std::pow(static_cast<double>(n), 1.0 / p - 0.5);
    } else {
        def.equiv_lo = std::isinf(p) ? 1.0 / std::sqrt(static_cast<double>(n))
                                     : std::pow(static_cast<double>(n), 1.0 / p - 0.5);
        def.equiv_hi = 1.0;
    }
    std::ostringstream lab;
    if (std::isinf(p)) {
        lab << "lp(" << n << ",inf)";
    } else {
        lab << "lp(" << n << "," << p << ")";
    }
    def.label = lab.str();

    if (n == 2) {
        if (p == 1.0) {
            def.geometry.exact = true;
            def.geometry.special_angles = [] {
                return std::vector<double>{0.0, kPi / 2, kPi, 3 * kPi / 2};
            };
            def.geometry.tangents = [](double theta) { return l1_tangents_2d(theta); };
        } else if (std::isinf(p)) {
            def.geometry.exact = true;
            def.geometry.special_angles = [] {
                return std::vector<double>{kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4};
            };
            def.geometry.tangents = [](double theta) { return linf_tangents_2d(theta); };
        } else {
            def.geometry.exact = true;
            def.geometry.special_angles = [] { return std::vector<double>{}; };
            def.geometry.tangents = [p](double theta) { return lp_smooth_tangents_2d(theta, p); };
        }
    }
    return NormedSpace(std::move(def));
}

// ---------------------------------------------------------------------------
// Renormings of l^1 / l^2 truncated to R^m.

NormedSpace build_example_62(int m) {
    if (m < 2) throw std::invalid_argument("build_example_62: m must be >= 2");
    SpaceDef def;
    def.dim = m;
    def.evaluator = [](const Vec& x) {
        double a = l1_norm(x), b2 = l2_norm_sq(x);
        return std::sqrt(a * a + b2);
    };
    def.subgrad = [](const Vec& x) {
        double a = l1_norm(x);
        double n = std::sqrt(a * a + l2_norm_sq(x));
        Vec f(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            double s = (x[i] > 0) - (x[i] < 0);
            f[i] = (a * s + x[i]) / n;
        }
        return Functional(std::move(f));
    };
    def.equiv_lo = std::sqrt(2.0);
    def.equiv_hi = std::sqrt(static_cast<double>(m) + 1.0);
    def.label = "ex62(" + std::to_string(m) + ")";
    return NormedSpace(std::move(def));
}

NormedSpace build_example_63(int m, std::vector<double> alpha) {
    if (m < 2) throw std::invalid_argument("build_example_63: m must be >= 2");
    if (alpha.empty()) {
        alpha.resize(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) alpha[static_cast<std::size_t>(k)] = 1.0 / (k + 1);
    }
    if (static_cast<int>(alpha.size()) != m) {
        throw std::invalid_argument("build_example_63: weights must have length m");
    }
    if (alpha[0] != 1.0) throw std::invalid_argument("build_example_63: alpha_1 must be 1");
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (!(alpha[k] > 0.0) || alpha[k] > 1.0) {
            throw std::invalid_argument("build_example_63: weights must lie in (0,1]");
        }
        if (k > 0 && alpha[k] > alpha[k - 1]) {
            throw std::invalid_argument("build_example_63: weights must be decreasing");
        }
    }
    auto prime_l2 = [](const Vec& x) {
        double s = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
        return std::sqrt(s);
    };
    SpaceDef def;
    def.dim = m;
    def.evaluator = [alpha, prime_l2](const Vec& x) {
        double M = std::max(std::abs(x[0]), prime_l2(x));
        double t = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double w = alpha[i] * x[i];
            t += w * w;
        }
        return std::sqrt(M * M + t);
    };
    def.subgrad = [alpha, prime_l2](const Vec& x) {
        double xp = prime_l2(x);
        double M = std::max(std::abs(x[0]), xp);
        double t = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) t += alpha[i] * alpha[i] * x[i] * x[i];
        double n = std::sqrt(M * M + t);
        Vec f(x.size(), 0.0);
        if (std::abs(x[0]) >= xp) {
            double s = (x[0] > 0) - (x[0] < 0);
            f[0] = M * s;
        } else {
            for (std::size_t i = 1; i < x.size(); ++i) f[i] = M * x[i] / xp;
        }
        for (std::size_t i = 0; i < x.size(); ++i) f[i] += alpha[i] * alpha[i] * x[i];
        for (double& v : f) v /= n;
        return Functional(std::move(f));
    };
    def.equiv_lo = 1.0 / std::sqrt(2.0);
    def.equiv_hi = std::sqrt(2.0);
    def.label = "ex63(" + std::to_string(m) + ")";
    return NormedSpace(std::move(def));
}

NormedSpace build_example_64(int m) {
    if (m < 2) throw std::invalid_argument("build_example_64: m must be >= 2");
    auto prime_l1 = [](const Vec& x) {
        double s = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i) s += std::abs(x[i]);
        return s;
    };
    SpaceDef def;
    def.dim = m;
    def.evaluator = [prime_l1](const Vec& x) {
        return std::max(std::abs(x[0]), prime_l1(x)) + l2_norm(x);
    };
    def.subgrad = [prime_l1](const Vec& x) {
        double l2 = l2_norm(x);
        Vec f(x.size(), 0.0);
        if (std::abs(x[0]) >= prime_l1(x)) {
            f[0] = (x[0] > 0) - (x[0] < 0);
        } else {
            for (std::size_t i = 1; i < x.size(); ++i) f[i] = (x[i] > 0) - (x[i] < 0);
        }
        for (std::size_t i = 0; i < x.size(); ++i) f[i] += x[i] / l2;
        return Functional(std::move(f));
    };
    def.equiv_lo = 1.0;
    def.equiv_hi = std::sqrt(static_cast<double>(m)) + 1.0;
    def.label = "ex64(" + std::to_string(m) + ")";
    return NormedSpace(std::move(def));
}

NormedSpace build_example_65(int m) {
    if (m < 2) throw std::invalid_argument("build_example_65: m must be >= 2");
    auto prime_l1 = [](const Vec& x) {
        double s = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i) s += std::abs(x[i]);
        return s;
    };
    auto prime_l2sq = [](const Vec& x) {
        double s = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * x[i];
        return s;
    };
    SpaceDef def;
    def.dim = m;
    def.evaluator = [prime_l1, prime_l2sq](const Vec& x) {
        double a = l1_norm(x);
        double trip = prime_l1(x) + l2_norm(x);
        return std::sqrt(a * a + prime_l2sq(x) + trip * trip);
    };
    def.subgrad = [prime_l1, prime_l2sq](const Vec& x) {
        double a = l1_norm(x);
        double l2 = l2_norm(x);
        double trip = prime_l1(x) + l2;
        double n = std::sqrt(a * a + prime_l2sq(x) + trip * trip);
        Vec f(x.size(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            double s = (x[i] > 0) - (x[i] < 0);
            f[i] = a * s;
            if (i > 0) f[i] += x[i] + trip * s;
            f[i] += trip * x[i] / l2;
            f[i] /= n;
        }
        return Functional(std::move(f));
    };
    def.equiv_lo = std::sqrt(2.0);
    double rm = std::sqrt(static_cast<double>(m));
    def.equiv_hi = std::sqrt(static_cast<double>(m) + 1.0 + (rm + 1.0) * (rm + 1.0));
    def.label = "ex65(" + std::to_string(m) + ")";
    return NormedSpace(std::move(def));
}

// ---------------------------------------------------------------------------
// Arc2D norms

ArcPiece ArcPiece::segment(double ax, double ay, double bx, double by) {
    ArcPiece p;
    p.kind = Kind::Segment;
    p.ax = ax; p.ay = ay; p.bx = bx; p.by = by;
    return p;
}

ArcPiece ArcPiece::elliptic(double cx, double cy, double ra, double rb, double ta, double tb) {
    ArcPiece p;
    p.kind = Kind::EllipticArc;
    p.cx = cx; p.cy = cy; p.ra = ra; p.rb = rb; p.ta = ta; p.tb = tb;
    p.ax = cx + ra * std::cos(ta);
    p.ay = cy + rb * std::sin(ta);
    p.bx = cx + ra * std::cos(tb);
    p.by = cy + rb * std::sin(tb);
    return p;
}

namespace {

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

// Unit tangent of the piece at parameter u in [0,1] along its a->b traversal.
Vec piece_tangent(const ArcPiece& p, double u) {
    if (p.kind == ArcPiece::Kind::Segment) {
        return normalize2({p.bx - p.ax, p.by - p.ay});
    }
    double t = p.ta + u * (p.tb - p.ta);
    double sgn = (p.tb >= p.ta) ? 1.0 : -1.0;
    return normalize2({-p.ra * std::sin(t) * sgn, p.rb * std::cos(t) * sgn});
}

// Intersection of the ray {s*v : s>0} with the piece. Returns s, or nullopt.
// On success, *param_out in [0,1] locates the hit along a->b.
std::optional<double> ray_piece_intersection(const ArcPiece& p, const Vec& v, double* param_out) {
    if (p.kind == ArcPiece::Kind::Segment) {
        double dx = p.bx - p.ax, dy = p.by - p.ay;
        double denom = cross2(v[0], v[1], dx, dy);
        if (std::abs(denom) < 1e-15 * (std::abs(v[0]) + std::abs(v[1]))) return std::nullopt;
        double s = cross2(p.ax, p.ay, dx, dy) / denom;
        if (!(s > 0.0)) return std::nullopt;
        double px = s * v[0] - p.ax, py = s * v[1] - p.ay;
        double u = (px * dx + py * dy) / (dx * dx + dy * dy);
        if (u < -1e-12 || u > 1.0 + 1e-12) return std::nullopt;
        if (param_out) *param_out = std::clamp(u, 0.0, 1.0);
        return s;
    }
    double A = (v[0] / p.ra) * (v[0] / p.ra) + (v[1] / p.rb) * (v[1] / p.rb);
    double B = -2.0 * (v[0] * p.cx / (p.ra * p.ra) + v[1] * p.cy / (p.rb * p.rb));
    double C = (p.cx / p.ra) * (p.cx / p.ra) + (p.cy / p.rb) * (p.cy / p.rb) - 1.0;
    double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return std::nullopt;
    double sq = std::sqrt(disc);
    double lo = std::min(p.ta, p.tb) - 1e-10, hi = std::max(p.ta, p.tb) + 1e-10;
    std::optional<double> best;
    for (double root : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}) {
        if (!(root > 0.0)) continue;
        double t = std::atan2((root * v[1] - p.cy) / p.rb, (root * v[0] - p.cx) / p.ra);
        for (double cand : {t, t + kTwoPi, t - kTwoPi}) {
            if (cand >= lo && cand <= hi) {
                if (!best || root < *best) {
                    best = root;
                    if (param_out) *param_out = std::clamp((cand - p.ta) / (p.tb - p.ta), 0.0, 1.0);
                }
                break;
            }
        }
    }
    return best;
}

struct Arc2DData {
    std::vector<ArcPiece> pieces;
    double r = 0.0;  // x-intercept

    // 1/norm of v restricted to the upper curve; v must have v[1] >= 0 or be (+x,0)/(-x,0).
    double inverse_norm_upper(const Vec& v) const {
        std::optional<double> best;
        for (const auto& p : pieces) {
            auto s = ray_piece_intersection(p, v, nullptr);
            if (s && (!best || *s < *best)) best = s;
        }
        if (!best) throw std::runtime_error("arc2d: ray missed the boundary curve");
        return *best;
    }

    double eval(const Vec& v) const {
        if (v[0] == 0.0 && v[1] == 0.0) return 0.0;
        Vec w = v;
        if (w[1] < 0.0 || (w[1] == 0.0 && w[0] < 0.0)) { w[0] = -w[0]; w[1] = -w[1]; }
        return 1.0 / inverse_norm_upper(w);
    }
};

void validate_arc2d(const Arc2DData& d) {
    const auto& ps = d.pieces;
    if (ps.empty()) throw std::invalid_argument("arc2d: no pieces");
    const double tol = 1e-9;
    if (std::abs(ps.front().ay) > tol || ps.front().ax >= 0)
        throw std::invalid_argument("arc2d: curve must start at (-r,0)");
    if (std::abs(ps.back().by) > tol || ps.back().bx <= 0)
        throw std::invalid_argument("arc2d: curve must end at (r,0)");
    if (std::abs(ps.front().ax + ps.back().bx) > tol)
        throw std::invalid_argument("arc2d: endpoints must be symmetric (-r,0),(r,0)");
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        if (std::abs(ps[i].bx - ps[i + 1].ax) > tol || std::abs(ps[i].by - ps[i + 1].ay) > tol)
            throw std::invalid_argument("arc2d: pieces are not connected");
    }
    // Sample tangent directions along the cw traversal and check convex turning,
    // including the corner closure at (r,0) against the antipodal copy.
    std::vector<Vec> tangents;
    for (const auto& p : ps) {
        int samples = (p.kind == ArcPiece::Kind::Segment) ? 1 : 64;
        for (int k = 0; k <= samples; ++k) {
            double u = static_cast<double>(k) / samples;
            Vec pt = (p.kind == ArcPiece::Kind::Segment)
                         ? Vec{p.ax + u * (p.bx - p.ax), p.ay + u * (p.by - p.ay)}
                         : Vec{p.cx + p.ra * std::cos(p.ta + u * (p.tb - p.ta)),
                               p.cy + p.rb * std::sin(p.ta + u * (p.tb - p.ta))};
            if (pt[1] < -tol) throw std::invalid_argument("arc2d: curve leaves the upper half-plane");
            tangents.push_back(piece_tangent(p, u));
        }
    }
    // Closure at (r,0): continue onto the antipodal image of the first piece.
    tangents.push_back(scale(piece_tangent(ps.front(), 0.0), -1.0));
    for (std::size_t i = 0; i + 1 < tangents.size(); ++i) {
        const Vec& t0 = tangents[i];
        const Vec& t1 = tangents[i + 1];
        double cr = cross2(t0[0], t0[1], t1[0], t1[1]);
        double dt = t0[0] * t1[0] + t0[1] * t1[1];
        if (cr > 1e-9) throw std::invalid_argument("arc2d: boundary is not convex");
        if (cr > -1e-12 && dt < 0) throw std::invalid_argument("arc2d: boundary reverses direction");
    }
}

}  // namespace

NormedSpace build_arc2d(const Arc2DSpec& spec) {
    auto data = std::make_shared<Arc2DData>();
    data->pieces = spec.pieces;
    validate_arc2d(*data);
    data->r = data->pieces.back().bx;

    // Certified equivalence constants: padded min/max boundary radius.
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    double speed_max = 0.0;
    for (const auto& p : data->pieces) {
        int samples = 4096;
        double len_param = (p.kind == ArcPiece::Kind::Segment)
                               ? std::hypot(p.bx - p.ax, p.by - p.ay)
                               : std::abs(p.tb - p.ta) * (p.ra + p.rb);
        speed_max = std::max(speed_max, len_param);
        for (int k = 0; k <= samples; ++k) {
            double u = static_cast<double>(k) / samples;
            double x, y;
            if (p.kind == ArcPiece::Kind::Segment) {
                x = p.ax + u * (p.bx - p.ax);
                y = p.ay + u * (p.by - p.ay);
            } else {
                double t = p.ta + u * (p.tb - p.ta);
                x = p.cx + p.ra * std::cos(t);
                y = p.cy + p.rb * std::sin(t);
            }
            double r = std::hypot(x, y);
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
        }
    }
    double pad = speed_max / 4096.0;  // Lipschitz slack of the radius sampling
    rmin = std::max(rmin - pad, 1e-9);
    rmax += pad;

    SpaceDef def;
    def.dim = 2;
    def.evaluator = [data](const Vec& v) { return data->eval(v); };
    def.equiv_lo = 1.0 / rmax;
    def.equiv_hi = 1.0 / rmin;
    def.label = spec.name.empty() ? "arc2d(custom)" : "arc2d(" + spec.name + ")";

    // Exact geometry: junction directions and one-sided tangents.
    std::vector<double> junctions;
    junctions.push_back(0.0);
    junctions.push_back(kPi);
    for (std::size_t i = 0; i + 1 < data->pieces.size(); ++i) {
        double a = wrap_angle(std::atan2(data->pieces[i].by, data->pieces[i].bx));
        junctions.push_back(a);
        junctions.push_back(wrap_angle(a + kPi));
    }
    std::sort(junctions.begin(), junctions.end());
    def.geometry.exact = true;
    def.geometry.special_angles = [junctions] { return junctions; };
    def.geometry.tangents = [data](double theta) -> TangentPair {
        double w = wrap_angle(theta);
        // Reduce to the upper curve; handle theta == 0 and theta == pi corners.
        auto upper_ccw = [data](double ang, bool outgoing_side) -> Vec {
            const auto& ps = data->pieces;
            if (ang < 1e-12 || ang > kTwoPi - 1e-12) {
                // (r,0): incoming from the lower curve, outgoing along the last piece reversed
                return outgoing_side ? scale(piece_tangent(ps.back(), 1.0), -1.0)
                                     : piece_tangent(ps.front(), 0.0);
            }
            if (std::abs(ang - kPi) < 1e-12) {
                return outgoing_side ? piece_tangent(ps.back(), 1.0)
                                     : scale(piece_tangent(ps.front(), 0.0), -1.0);
            }
            Vec v = unit_direction(ang);
            // Hit piece; on junctions prefer the side requested (ccw incoming = later
            // piece in cw order, ccw outgoing = earlier piece).
            std::vector<std::pair<std::size_t, double>> hits;
            for (std::size_t i = 0; i < ps.size(); ++i) {
                double u;
                auto s = ray_piece_intersection(ps[i], v, &u);
                if (s) hits.emplace_back(i, u);
            }
            if (hits.empty()) throw std::runtime_error("arc2d tangents: ray missed boundary");
            std::size_t idx = hits.front().first;
            double u = hits.front().second;
            if (hits.size() > 1) {
                // junction: pieces listed in cw (left-to-right) order
                if (outgoing_side) {
                    idx = std::min(hits.front().first, hits.back().first);
                    u = 1.0;
                } else {
                    idx = std::max(hits.front().first, hits.back().first);
                    u = 0.0;
                }
            }
            return scale(piece_tangent(ps[idx], u), -1.0);
        };
        if (w > kPi + 1e-12) {
            double a = w - kPi;
            Vec in = scale(upper_ccw(a, false), -1.0);
            Vec out = scale(upper_ccw(a, true), -1.0);
            return TangentPair{in, out};
        }
        return TangentPair{upper_ccw(w, false), upper_ccw(w, true)};
    };

    return NormedSpace(std::move(def));
}

Arc2DSpec arc2d_preset(const std::string& name) {
    Arc2DSpec spec;
    spec.name = name;
    if (name == "ex61") {
        // Flat top between (-1.5,1.5) and (1.5,1.5), elliptic arcs down to the
        // x-axis corners at (+-3,0). Ellipses: center (+-1.5,-0.5), semi-axes
        // a = 6/sqrt(15), b = 2; tangent horizontal at the junctions, oblique
        // at the x-axis, so (+-3,0) are non-smooth while junctions are smooth.
        double b = 2.0, yc = 1.5 - b;
        double a = 1.5 / std::sqrt(1.0 - (yc / b) * (yc / b));
        double t_axis = std::asin(-yc / b);  // parameter at the x-axis crossing
        spec.pieces.push_back(
            ArcPiece::elliptic(-1.5, yc, a, b, kPi - t_axis, kPi / 2));
        spec.pieces.push_back(ArcPiece::segment(-1.5, 1.5, 1.5, 1.5));
        spec.pieces.push_back(ArcPiece::elliptic(1.5, yc, a, b, kPi / 2, t_axis));
        return spec;
    }
    if (name == "fig5") {
        // Diamond |x|+|y| <= 2 with the top/bottom vertices rounded by circles
        // of radius 0.4; the (+-2,0) vertices stay sharp.
        double r = 0.4;
        double c = 2.0 - r * std::sqrt(2.0);
        double tx = r / std::sqrt(2.0);
        spec.pieces.push_back(ArcPiece::segment(-2.0, 0.0, -tx, c + tx));
        spec.pieces.push_back(ArcPiece::elliptic(0.0, c, r, r, 3 * kPi / 4, kPi / 4));
        spec.pieces.push_back(ArcPiece::segment(tx, c + tx, 2.0, 0.0));
        return spec;
    }
    throw std::invalid_argument("arc2d_preset: unknown preset '" + name + "'");
}

// ---------------------------------------------------------------------------
// Absolute norms

AbsoluteNorm::AbsoluteNorm(int dim, std::function<double(const Vec&)> evaluator,
                           std::string label, int sample_budget)
    : dim_(dim), eval_(std::move(evaluator)), label_(std::move(label)) {
    if (dim_ < 1) throw std::invalid_argument("AbsoluteNorm: dim must be >= 1");
    if (!eval_) throw std::invalid_argument("AbsoluteNorm: evaluator required");

    const double tol = 1e-12;
    auto fail = [this](const std::string& what, const Vec& a, const Vec& b) {
        if (cert_.failure.empty()) {
            cert_.failure = what + " violated at a=" + banachlab::to_string(a) +
                            ", b=" + banachlab::to_string(b);
        }
    };

    cert_.normalized = true;
    for (int i = 0; i < dim_; ++i) {
        Vec e(static_cast<std::size_t>(dim_), 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        if (std::abs(eval_(e) - 1.0) > tol) {
            cert_.normalized = false;
            fail("normalization |e_i|=1", e, e);
        }
    }

    std::uint64_t rng = 0x5ba9'c0de'0000'0001ULL;
    cert_.absolute = cert_.monotone = cert_.sandwich = true;
    for (int k = 0; k < sample_budget; ++k) {
        Vec a(static_cast<std::size_t>(dim_));
        for (double& v : a) v = 2.0 * uniform01(rng) - 1.0;
        double na = eval_(a);
        double scale_tol = tol * std::max(1.0, na);

        Vec b = a;
        for (double& v : b) {
            if (uniform01(rng) < 0.5) v = -v;
        }
        if (std::abs(eval_(b) - na) > scale_tol) {
            cert_.absolute = false;
            fail("absoluteness", a, b);
        }

        Vec m = a;
        for (double& v : m) v *= uniform01(rng);
        if (eval_(m) > na + scale_tol) {
            cert_.monotone = false;
            fail("monotonicity", a, m);
        }

        if (na < linf_norm(a) - scale_tol || na > l1_norm(a) + scale_tol) {
            cert_.sandwich = false;
            fail("l1/linf sandwich", a, a);
        }
    }
}

double AbsoluteNorm::operator()(const Vec& a) const {
    ensure_dim(a, static_cast<std::size_t>(dim_), "absolute norm argument");
    ensure_finite(a, "absolute norm argument");
    return eval_(a);
}

Functional AbsoluteNorm::subgrad(const Vec& a) const {
    if (!subgrad_) throw std::logic_error("AbsoluteNorm: no subgradient attached");
    return subgrad_(a);
}

NormedSpace AbsoluteNorm::as_space() const {
    SpaceDef def;
    def.dim = dim_;
    def.evaluator = eval_;
    def.label = label_;
    double rm = std::sqrt(static_cast<double>(dim_));
    def.equiv_lo = equiv_lo_ > 0.0 ? equiv_lo_ : 1.0 / rm;  // |a|_E >= |a|_inf >= |a|_2/sqrt(m)
    def.equiv_hi = equiv_hi_ > 0.0 ? equiv_hi_ : rm;        // |a|_E <= |a|_1   <= sqrt(m)|a|_2
    def.equiv_certified = certified();
    if (subgrad_) def.subgrad = subgrad_;
    def.geometry = geometry_;
    return NormedSpace(std::move(def));
}

AbsoluteNorm build_absolute_lp(int m, double p) {
    NormedSpace model = build_lp(m, p);
    AbsoluteNorm E(m, [p](const Vec& a) { return lp_eval(a, p); }, model.label());
    E.set_equiv(model.equiv_lo(), model.equiv_hi());
    if (m == 2) E.set_geometry(model.geometry());
    if (p > 1.0 && !std::isinf(p)) {
        E.attach_subgrad([p](const Vec& a) { return lp_subgrad(a, p); });
    } else if (p == 1.0) {
        E.attach_subgrad([](const Vec& a) {
            Vec f(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) f[i] = (a[i] > 0) - (a[i] < 0);
            return Functional(std::move(f));
        });
    } else {
        E.attach_subgrad([](const Vec& a) {
            std::size_t j = 0;
            for (std::size_t i = 1; i < a.size(); ++i) {
                if (std::abs(a[i]) > std::abs(a[j])) j = i;
            }
            Vec f(a.size(), 0.0);
            f[j] = (a[j] >= 0) ? 1.0 : -1.0;
            return Functional(std::move(f));
        });
    }
    return E;
}

AbsoluteNorm build_absolute_weighted_lp(int m, double p, std::vector<double> weights) {
    if (static_cast<int>(weights.size()) != m) {
        throw std::invalid_argument("build_absolute_weighted_lp: need one weight per coordinate");
    }
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("build_absolute_weighted_lp: weights must be positive");
    }
    std::ostringstream lab;
    lab << "wlp(" << m << "," << p << ";";
    for (int i = 0; i < m; ++i) lab << (i ? "," : "") << weights[static_cast<std::size_t>(i)];
    lab << ")";
    return AbsoluteNorm(
        m,
        [p, weights](const Vec& a) {
            Vec w(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) w[i] = weights[i] * a[i];
            return lp_eval(w, p);
        },
        lab.str());
}

AbsoluteNorm build_absolute_custom(int m, std::function<double(const Vec&)> evaluator,
                                   std::string label) {
    return AbsoluteNorm(m, std::move(evaluator), std::move(label));
}

}  // namespace banachlab
