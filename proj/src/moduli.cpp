#include "banachlab/moduli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "banachlab/numerics.hpp"

namespace banachlab {

const char* to_string(ModulusKind k) {
    switch (k) {
        case ModulusKind::delta_X: return "delta_X";
        case ModulusKind::rho_X: return "rho_X";
        case ModulusKind::delta_uacs: return "delta_uacs";
        case ModulusKind::delta_uacs_tilde: return "delta_uacs_tilde";
        case ModulusKind::rho_uacs: return "rho_uacs";
        case ModulusKind::rho_uacs_ball: return "rho_uacs_ball";
        case ModulusKind::delta_uacsed: return "delta_uacsed";
        case ModulusKind::nonsquareness: return "nonsquareness";
    }
    return "?";
}

std::optional<ModulusKind> modulus_kind_from_string(const std::string& s) {
    for (ModulusKind k :
         {ModulusKind::delta_X, ModulusKind::rho_X, ModulusKind::delta_uacs,
          ModulusKind::delta_uacs_tilde, ModulusKind::rho_uacs, ModulusKind::rho_uacs_ball,
          ModulusKind::delta_uacsed, ModulusKind::nonsquareness}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Scan2D {
    Boundary2D bd;
    Lipschitz2D lip;
    double h;  // largest grid gap
    double L;  // Lipschitz rate of theta -> |b(theta) + w|_X

    Scan2D(const NormedSpace& space, int angles, std::vector<double> extra = {})
        : bd(space, angles, std::move(extra)), lip(Lipschitz2D::of(space)) {
        h = bd.max_gap();
        L = lip.norm_rate();
    }
};

GridInfo grid_info(int angles, int iters, const char* method) {
    GridInfo g;
    g.angles = angles;
    g.refine_iters = iters;
    g.method = method;
    return g;
}

// Deterministic polish of a pair of boundary angles.
struct PairPolish {
    const NormedSpace& space;
    double theta, phi;

    void run(int iters, double step0,
             const std::function<double(const Vec&, const Vec&)>& objective,
             const std::function<bool(const Vec&, const Vec&)>& feasible, bool minimize) {
        std::vector<double> vars = {theta, phi};
        double sign = minimize ? 1.0 : -1.0;
        coordinate_polish(
            vars, step0, iters,
            [&](const std::vector<double>& v) {
                return sign * objective(boundary_point(space, v[0]), boundary_point(space, v[1]));
            },
            [&](const std::vector<double>& v) {
                return feasible(boundary_point(space, v[0]), boundary_point(space, v[1]));
            });
        theta = vars[0];
        phi = vars[1];
    }
};

// ---------------------------------------------------------------------------
// pairwise scans (2D certified)

ModulusEstimate delta_convexity_2d(const NormedSpace& space, double eps, const Resolution& res) {
    Scan2D sc(space, res.angles);
    const std::size_t n = sc.bd.size();
    const double relax = sc.L * sc.h;
    const double oslack = sc.L * sc.h / 2.0;

    double strict_min = kInf, relaxed_min = kInf;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& x = sc.bd.point(i);
        for (std::size_t j = i; j < n; ++j) {
            const Vec& y = sc.bd.point(j);
            double dist = space.norm_unchecked(sub(x, y));
            if (dist < eps - relax) continue;
            double obj = 1.0 - space.norm_unchecked(add(x, y)) / 2.0;
            if (obj < relaxed_min) relaxed_min = obj;
            if (dist >= eps && obj < strict_min) {
                strict_min = obj;
                wi = i;
                wj = j;
            }
        }
    }

    ModulusEstimate out;
    out.kind = ModulusKind::delta_X;
    out.argument = eps;
    out.resolution = grid_info(res.angles, res.refine_iters, "2d pair grid + lipschitz");
    if (!std::isfinite(strict_min)) {
        out.lo = std::max(0.0, relaxed_min - oslack);
        out.hi = 1.0;
        out.certified = false;
        out.notes.push_back("no feasible pair at grid resolution");
        return out;
    }

    PairPolish pol{space, sc.bd.angle(wi), sc.bd.angle(wj)};
    pol.run(
        res.refine_iters, sc.h,
        [&](const Vec& x, const Vec& y) { return 1.0 - space.norm_unchecked(add(x, y)) / 2.0; },
        [&](const Vec& x, const Vec& y) { return space.norm_unchecked(sub(x, y)) >= eps; }, true);
    Vec wx = boundary_point(space, pol.theta), wy = boundary_point(space, pol.phi);
    double polished = 1.0 - space.norm_unchecked(add(wx, wy)) / 2.0;
    if (polished > strict_min || space.norm_unchecked(sub(wx, wy)) < eps) {
        wx = sc.bd.point(wi);
        wy = sc.bd.point(wj);
        polished = strict_min;
    }

    out.hi = polished;
    out.lo = std::max(0.0, relaxed_min - oslack);
    out.certified = sc.lip.certified;
    out.witness = Witness{wx, wy, std::nullopt, polished};

    // Interior consistency sampling (the infimum over the ball should not drop
    // below the sphere value).
    bool interior_smaller = false;
    int m = 96;
    for (int a = 0; a < m && !interior_smaller; ++a) {
        for (int b = a; b < m; ++b) {
            for (double r : {0.4, 0.7, 0.9}) {
                Vec x = scale(boundary_point(space, a * 2 * M_PI / m), r);
                for (double s : {0.6, 0.85, 1.0}) {
                    Vec y = scale(boundary_point(space, b * 2 * M_PI / m), s);
                    if (space.norm_unchecked(sub(x, y)) < eps) continue;
                    double obj = 1.0 - space.norm_unchecked(add(x, y)) / 2.0;
                    if (obj < out.hi - 1e-12) {
                        out.hi = obj;
                        out.witness = Witness{x, y, std::nullopt, obj};
                        interior_smaller = true;
                    }
                }
            }
        }
    }
    if (interior_smaller) out.notes.push_back("interior pair below sphere minimum");
    else out.notes.push_back("interior sampling consistent with sphere search");
    return out;
}

ModulusEstimate sup_pair_scan_2d(const NormedSpace& space, ModulusKind kind, double tau,
                                 const Resolution& res) {
    // rho_X (no constraint), rho_uacs (|x+y| >= 2(1-tau)), nonsquareness.
    Scan2D sc(space, res.angles);
    const std::size_t n = sc.bd.size();
    const bool constrained = kind == ModulusKind::rho_uacs;
    const bool ns = kind == ModulusKind::nonsquareness;
    const double relax = constrained ? sc.L * sc.h : 0.0;
    const double oslack = ns ? sc.L * sc.h / 2.0 : (sc.L + tau * sc.L) * sc.h / 2.0;

    auto objective = [&](const Vec& x, const Vec& y) {
        if (ns) {
            return std::min(space.norm_unchecked(add(x, y)), space.norm_unchecked(sub(x, y))) / 2.0;
        }
        return (space.norm_unchecked(axpy(x, tau, y)) + space.norm_unchecked(axpy(x, -tau, y))) / 2.0 -
               1.0;
    };

    double strict_max = -kInf, relaxed_max = -kInf;
    std::size_t wi = 0, wj = 0;
    const bool symmetric = ns;  // nonsquareness objective is symmetric in (x,y)
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& x = sc.bd.point(i);
        for (std::size_t j = symmetric ? i : 0; j < n; ++j) {
            const Vec& y = sc.bd.point(j);
            if (constrained) {
                double s = space.norm_unchecked(add(x, y));
                if (s < 2.0 * (1.0 - tau) - relax) continue;
                double obj = objective(x, y);
                if (obj > relaxed_max) relaxed_max = obj;
                if (s >= 2.0 * (1.0 - tau) && obj > strict_max) {
                    strict_max = obj;
                    wi = i;
                    wj = j;
                }
            } else {
                double obj = objective(x, y);
                if (obj > strict_max) {
                    strict_max = obj;
                    wi = i;
                    wj = j;
                }
            }
        }
    }
    if (!constrained) relaxed_max = strict_max;

    ModulusEstimate out;
    out.kind = kind;
    out.argument = tau;
    out.resolution = grid_info(res.angles, res.refine_iters, "2d pair grid + lipschitz");
    if (!std::isfinite(strict_max)) {
        out.lo = 0.0;
        out.hi = std::max(0.0, relaxed_max + oslack);
        out.certified = sc.lip.certified;
        out.notes.push_back("no feasible pair at grid resolution");
        return out;
    }

    PairPolish pol{space, sc.bd.angle(wi), sc.bd.angle(wj)};
    pol.run(
        res.refine_iters, sc.h, objective,
        [&](const Vec& x, const Vec& y) {
            return !constrained || space.norm_unchecked(add(x, y)) >= 2.0 * (1.0 - tau);
        },
        false);
    Vec wx = boundary_point(space, pol.theta), wy = boundary_point(space, pol.phi);
    double polished = objective(wx, wy);
    bool ok = !constrained || space.norm_unchecked(add(wx, wy)) >= 2.0 * (1.0 - tau);
    if (!ok || polished < strict_max) {
        wx = sc.bd.point(wi);
        wy = sc.bd.point(wj);
        polished = strict_max;
    }

    out.lo = std::max(polished, 0.0);
    out.hi = std::max(relaxed_max + oslack, out.lo);
    out.certified = sc.lip.certified;
    out.witness = Witness{wx, wy, std::nullopt, polished};
    return out;
}

ModulusEstimate rho_uacs_ball_2d(const NormedSpace& space, double tau, const Resolution& res) {
    int angles = std::min(res.angles, 384);
    Scan2D sc(space, angles);
    const std::size_t n = sc.bd.size();
    const int R = std::max(res.radial, 5);
    const double dr = 1.0 / (R - 1);
    const double Cc = sc.lip.C / sc.lip.c;
    const double oslack = (sc.L + tau * sc.L) * sc.h / 2.0 + (1.0 + tau) * Cc * dr / 2.0;
    const double relax = 2.0 * sc.L * sc.h / 2.0 + 2.0 * Cc * dr / 2.0;

    double strict_max = -kInf, relaxed_max = -kInf;
    Vec wx, wy;
    for (std::size_t i = 0; i < n; ++i) {
        for (int a = 0; a < R; ++a) {
            Vec x = scale(sc.bd.point(i), a * dr);
            for (std::size_t j = 0; j < n; ++j) {
                for (int b = 0; b < R; ++b) {
                    Vec y = scale(sc.bd.point(j), b * dr);
                    double s = space.norm_unchecked(add(x, y));
                    if (s < 2.0 * (1.0 - tau) - relax) continue;
                    double obj = (space.norm_unchecked(axpy(x, tau, y)) +
                                  space.norm_unchecked(axpy(x, -tau, y))) /
                                     2.0 -
                                 1.0;
                    if (obj > relaxed_max) relaxed_max = obj;
                    if (s >= 2.0 * (1.0 - tau) && obj > strict_max) {
                        strict_max = obj;
                        wx = x;
                        wy = y;
                    }
                }
            }
        }
    }

    ModulusEstimate out;
    out.kind = ModulusKind::rho_uacs_ball;
    out.argument = tau;
    out.resolution = grid_info(angles, res.refine_iters, "2d ball grid + lipschitz");
    if (!std::isfinite(strict_max)) {
        out.lo = 0.0;
        out.hi = std::max(0.0, relaxed_max + oslack);
        out.certified = sc.lip.certified;
        out.notes.push_back("no feasible pair at grid resolution");
        return out;
    }
    out.lo = std::max(strict_max, 0.0);
    out.hi = std::max(relaxed_max + oslack, out.lo);
    out.certified = sc.lip.certified;
    out.witness = Witness{wx, wy, std::nullopt, strict_max};
    return out;
}

// ---------------------------------------------------------------------------
// delta_uacs (2D): exact subdifferential-endpoint membership at grid atoms,
// cell-wise certified lower bound between them.

struct SubdiffTable {
    std::vector<Functional> fin, fout;
    std::vector<double> dual_gap;  // angle between fout[i] and fin[i+1]

    SubdiffTable(const NormedSpace& space, const Boundary2D& bd) {
        const std::size_t n = bd.size();
        fin.reserve(n);
        fout.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            TangentPair tp = boundary_tangents_2d(space, bd.angle(i));
            auto support = [&](const Vec& t) {
                Vec nrm = {t[1], -t[0]};
                double s = dot(nrm, bd.point(i));
                if (s <= 0) {
                    nrm = scale(nrm, -1.0);
                    s = -s;
                }
                return Functional(scale(nrm, 1.0 / s));
            };
            fin.push_back(support(tp.incoming));
            fout.push_back(support(tp.outgoing));
        }
        dual_gap.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec& u = fout[i].coords;
            const Vec& v = fin[(i + 1) % n].coords;
            double cr = std::abs(u[0] * v[1] - u[1] * v[0]);
            double dt = dot(u, v);
            dual_gap[i] = std::atan2(cr, dt);
        }
    }

    double member_min(std::size_t i, const Vec& y) const {
        return std::min(fin[i](y), fout[i](y));
    }
};

ModulusEstimate delta_uacs_2d(const NormedSpace& space, double eps, const Resolution& res) {
    std::vector<double> extra;
    if (!space.has_geometry()) extra = detect_special_angles_2d(space, std::max(res.angles, 1024));
    Scan2D sc(space, res.angles, extra);
    const std::size_t n = sc.bd.size();
    SubdiffTable sd(space, sc.bd);

    const double dspeed = sc.lip.C + sc.lip.C * sc.lip.C / sc.lip.c;  // dual boundary speed
    const double inv_c = 1.0 / sc.lip.c;
    const double f2max = sc.lip.C;  // |f|_2 <= C on the dual sphere
    const double sagf = f2max * sc.lip.boundary_speed * sc.h;  // f(y) variation along a y-cell

    double atom_hi = kInf;
    std::size_t wi = 0, wj = 0;
    bool wf_in = true;
    double lo_bound = kInf;

    std::vector<double> rowS(n), nextS(n);
    auto fill_row = [&](std::size_t i, std::vector<double>& row) {
        const Vec& x = sc.bd.point(i);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = space.norm_unchecked(add(x, sc.bd.point(j)));
        }
    };
    fill_row(0, rowS);

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t inext = (i + 1) % n;
        fill_row(inext, nextS);

        for (std::size_t j = 0; j < n; ++j) {
            std::size_t jn = (j + 1) % n;
            const Vec& y = sc.bd.point(j);
            // Atom (x_i exact): strict membership for the upper bound.
            double m_in = sd.fin[i](y), m_out = sd.fout[i](y);
            double m = std::min(m_in, m_out);
            if (m <= 1.0 - eps) {
                double obj = 1.0 - rowS[j] / 2.0;
                if (obj < atom_hi) {
                    atom_hi = obj;
                    wi = i;
                    wj = j;
                    wf_in = m_in <= m_out;
                }
            }
            // Atom x_i against the open y-cell (j, j+1): certified lower bound.
            double m_cell_atom =
                std::min({m_in, m_out, sd.fin[i](sc.bd.point(jn)), sd.fout[i](sc.bd.point(jn))}) -
                sagf;
            if (m_cell_atom <= 1.0 - eps) {
                double obj_lb = 1.0 - std::max(rowS[j], rowS[jn]) / 2.0 - sc.L * sc.h / 4.0;
                lo_bound = std::min(lo_bound, obj_lb);
            }
            // Open x-cell (i, i+1) x y-cell (j, j+1): the subgradients sweep the
            // dual arc from fout[i] to fin[i+1]; a linear functional can dip
            // below the endpoint values by at most arclength * |y|_2.
            double mc = std::min({sd.fout[i](y), sd.fin[inext](y), sd.fout[i](sc.bd.point(jn)),
                                  sd.fin[inext](sc.bd.point(jn))}) -
                        dspeed * sd.dual_gap[i] * inv_c - sagf;
            if (mc <= 1.0 - eps) {
                double smax = std::max({rowS[j], rowS[jn], nextS[j], nextS[jn]});
                double obj_lb = 1.0 - smax / 2.0 - sc.L * sc.h / 2.0;
                lo_bound = std::min(lo_bound, obj_lb);
            }
        }
        std::swap(rowS, nextS);
    }

    ModulusEstimate out;
    out.kind = ModulusKind::delta_uacs;
    out.argument = eps;
    out.resolution = grid_info(res.angles, res.refine_iters, "2d subdifferential pair scan");
    if (!std::isfinite(atom_hi)) {
        out.lo = std::isfinite(lo_bound) ? std::max(0.0, lo_bound) : 1.0;
        out.hi = 1.0;
        out.certified = false;
        out.notes.push_back("feasible set empty at grid resolution");
        return out;
    }

    // Polish the attained pair, re-deriving membership from fresh tangents.
    double th = sc.bd.angle(wi), ph = sc.bd.angle(wj);
    {
        std::vector<double> vars = {th, ph};
        auto membership = [&](double theta, const Vec& y) {
            TangentPair tp = boundary_tangents_2d(space, theta);
            Vec p = boundary_point(space, theta);
            auto support = [&](const Vec& t) {
                Vec nrm = {t[1], -t[0]};
                double s = dot(nrm, p);
                if (s <= 0) {
                    nrm = scale(nrm, -1.0);
                    s = -s;
                }
                return Functional(scale(nrm, 1.0 / s));
            };
            return std::min(support(tp.incoming)(y), support(tp.outgoing)(y));
        };
        coordinate_polish(
            vars, sc.h, res.refine_iters,
            [&](const std::vector<double>& v) {
                return 1.0 -
                       space.norm_unchecked(add(boundary_point(space, v[0]), boundary_point(space, v[1]))) /
                           2.0;
            },
            [&](const std::vector<double>& v) {
                return membership(v[0], boundary_point(space, v[1])) <= 1.0 - eps;
            });
        Vec px = boundary_point(space, vars[0]), py = boundary_point(space, vars[1]);
        double pobj = 1.0 - space.norm_unchecked(add(px, py)) / 2.0;
        if (pobj < atom_hi && membership(vars[0], py) <= 1.0 - eps) {
            atom_hi = pobj;
            th = vars[0];
            ph = vars[1];
            wi = n;  // witness now comes from the polished angles
        }
    }

    Vec wx, wy;
    Functional wf;
    if (wi == n) {
        wx = boundary_point(space, th);
        wy = boundary_point(space, ph);
        TangentPair tp = boundary_tangents_2d(space, th);
        auto support = [&](const Vec& t) {
            Vec nrm = {t[1], -t[0]};
            double s = dot(nrm, wx);
            if (s <= 0) {
                nrm = scale(nrm, -1.0);
                s = -s;
            }
            return Functional(scale(nrm, 1.0 / s));
        };
        Functional a = support(tp.incoming), b = support(tp.outgoing);
        wf = a(wy) <= b(wy) ? a : b;
    } else {
        wx = sc.bd.point(wi);
        wy = sc.bd.point(wj);
        wf = wf_in ? sd.fin[wi] : sd.fout[wi];
    }

    out.hi = std::max(atom_hi, 0.0);
    out.lo = std::min(std::max(0.0, lo_bound), out.hi);
    out.certified = sc.lip.certified;
    out.witness = Witness{wx, wy, wf, out.hi};
    return out;
}

// ---------------------------------------------------------------------------
// delta_uacs_tilde (2D): triple grid over (f, x, y) with the dual sphere
// discretized through certified dual_norm enclosures.

ModulusEstimate delta_uacs_tilde_2d(const NormedSpace& space, double eps, const Resolution& res) {
    const int T = std::max(64, res.tuple_angles);
    std::vector<double> extra;
    if (!space.has_geometry()) extra = detect_special_angles_2d(space, std::max(res.angles, 1024));
    Scan2D sc(space, T, extra);
    const std::size_t n = sc.bd.size();

    // Dual boundary table: f_k = u(psi_k) / dual_norm.hi, so |f_k|* <= 1.
    // These carry the certified lower bound (they cover the dual sphere).
    Resolution dres = res;
    dres.angles = std::max(res.angles, 2048);
    std::vector<Functional> fs;
    fs.reserve(n);
    double kappa = 0.0;  // max relative dual-norm enclosure half-width
    for (std::size_t k = 0; k < n; ++k) {
        Vec u = unit_direction(sc.bd.angle(k));
        DualNormEstimate dn = dual_norm(space, Functional(u), dres);
        fs.emplace_back(scale(u, 1.0 / dn.hi));
        kappa = std::max(kappa, (dn.hi - dn.lo) / dn.hi);
    }
    // Support functionals from one-sided tangents are exactly norm-one and
    // carry the attained upper bound.
    SubdiffTable sd(space, sc.bd);
    std::vector<const Functional*> gs;
    gs.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        gs.push_back(&sd.fin[i]);
        if (linf_norm(sub(sd.fout[i].coords, sd.fin[i].coords)) > 1e-12) gs.push_back(&sd.fout[i]);
    }

    std::vector<double> S(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            S[i * n + j] = space.norm_unchecked(add(sc.bd.point(i), sc.bd.point(j)));
        }
    }

    // Attained side over the exactly-unit candidates.
    double strict_min = kInf;
    std::size_t wi = 0, wj = 0;
    const Functional* wf = nullptr;
    {
        std::vector<double> G(n);
        for (const Functional* g : gs) {
            for (std::size_t i = 0; i < n; ++i) G[i] = dot(g->coords, sc.bd.point(i));
            for (std::size_t i = 0; i < n; ++i) {
                double t2 = 1.0 - G[i];
                if (t2 >= strict_min) continue;
                const double* Si = &S[i * n];
                for (std::size_t j = 0; j < n; ++j) {
                    if (G[j] > 1.0 - eps) continue;
                    double obj = std::max(1.0 - Si[j] / 2.0, t2);
                    if (obj < strict_min) {
                        strict_min = obj;
                        wi = i;
                        wj = j;
                        wf = g;
                    }
                }
            }
        }
    }

    // Certified side over the tabulated dual grid with Lipschitz relaxation.
    const double c = sc.lip.c, C = sc.lip.C;
    const double dspeed = C / (1.0 - kappa) +
                          (1.0 + kappa) * C * C / ((1.0 - kappa) * (1.0 - kappa) * c);
    const double rate_theta = std::max(sc.L / 2.0, C * (1.0 + kappa) * sc.lip.boundary_speed);
    const double rate_phi_obj = sc.L / 2.0;
    const double rate_psi = dspeed / c;
    const double oslack = (rate_theta + rate_phi_obj + rate_psi) * sc.h / 2.0 + kappa * C / c;
    const double relax = (C * (1.0 + kappa) * sc.lip.boundary_speed + rate_psi) * sc.h + kappa * C / c;

    double relaxed_min = kInf;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> Ak(n);
        for (std::size_t i = 0; i < n; ++i) Ak[i] = dot(fs[k].coords, sc.bd.point(i));
        for (std::size_t i = 0; i < n; ++i) {
            double t2 = 1.0 - Ak[i];
            if (t2 - oslack >= relaxed_min) continue;
            const double* Si = &S[i * n];
            for (std::size_t j = 0; j < n; ++j) {
                if (Ak[j] > 1.0 - eps + relax) continue;
                double obj = std::max(1.0 - Si[j] / 2.0, t2);
                if (obj < relaxed_min) relaxed_min = obj;
            }
        }
    }

    ModulusEstimate out;
    out.kind = ModulusKind::delta_uacs_tilde;
    out.argument = eps;
    out.resolution = grid_info(T, res.refine_iters, "2d triple grid over (f,x,y)");
    if (!std::isfinite(strict_min)) {
        out.lo = std::isfinite(relaxed_min) ? std::max(0.0, relaxed_min - oslack) : 1.0;
        out.hi = 1.0;
        out.certified = false;
        out.notes.push_back("feasible set empty at grid resolution");
        return out;
    }
    out.hi = std::max(0.0, strict_min);
    out.lo = std::min(std::isfinite(relaxed_min) ? std::max(0.0, relaxed_min - oslack) : 0.0,
                      out.hi);
    out.certified = sc.lip.certified;
    out.witness = Witness{sc.bd.point(wi), sc.bd.point(wj), *wf,
                          std::max(1.0 - S[wi * n + wj] / 2.0, 1.0 - (*wf)(sc.bd.point(wi)))};
    std::ostringstream ns;
    ns << "dual sphere tabulated with relative defect <= " << kappa;
    out.notes.push_back(ns.str());
    return out;
}

// ---------------------------------------------------------------------------
// delta_uacsed

ModulusEstimate delta_uacsed_impl(const NormedSpace& space, const Vec& z, double eps,
                                  const Resolution& res) {
    ensure_dim(z, static_cast<std::size_t>(space.dim()), "delta_uacsed direction");
    ensure_finite(z, "delta_uacsed direction");
    if (is_zero(z, 0.0)) throw std::invalid_argument("delta_uacsed: z must be nonzero");
    if (!(eps > 0.0) || eps > 2.0) throw std::invalid_argument("delta_uacsed: eps out of (0,2]");
    Vec zh = scale(z, 1.0 / l2_norm(z));  // span-invariant normalization

    // On each side of a base point x, |x - s z| = 1 has at most one nonzero
    // root; bisection after a doubling bracket.
    auto side_root = [&](const Vec& x, double sign) -> std::optional<double> {
        double lo = 0.0, hi = 0.25 * sign;
        double q = 0.0;
        for (int it = 0; it < 60; ++it) {
            q = space.norm_unchecked(axpy(x, -hi, zh));
            if (q > 1.0 + 1e-13) break;
            lo = hi;
            hi *= 2.0;
            if (std::abs(hi) > 1e6) return std::nullopt;
        }
        if (q <= 1.0 + 1e-13) return std::nullopt;
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi);
            if (space.norm_unchecked(axpy(x, -mid, zh)) > 1.0) hi = mid;
            else lo = mid;
        }
        double s = 0.5 * (lo + hi);
        if (std::abs(s) < 1e-9) return std::nullopt;  // degenerate: y == x
        return s;
    };

    ModulusEstimate out;
    out.kind = ModulusKind::delta_uacsed;
    out.argument = eps;

    double hi = kInf;
    std::optional<Witness> wit;

    if (space.dim() == 2) {
        std::vector<double> extra;
        if (!space.has_geometry()) extra = detect_special_angles_2d(space, std::max(res.angles, 1024));
        Scan2D sc(space, res.angles, extra);
        SubdiffTable sd(space, sc.bd);
        for (std::size_t i = 0; i < sc.bd.size(); ++i) {
            const Vec& x = sc.bd.point(i);
            for (double sign : {1.0, -1.0}) {
                auto s = side_root(x, sign);
                if (!s) continue;
                Vec y = axpy(x, -*s, zh);
                double m_in = sd.fin[i](y), m_out = sd.fout[i](y);
                if (std::min(m_in, m_out) <= 1.0 - eps) {
                    double obj = 1.0 - space.norm_unchecked(add(x, y)) / 2.0;
                    if (obj < hi) {
                        hi = obj;
                        wit = Witness{x, y, m_in <= m_out ? sd.fin[i] : sd.fout[i], obj};
                    }
                }
            }
        }
        out.resolution = grid_info(res.angles, res.refine_iters, "2d base-point sweep + line roots");
    } else {
        auto dirs = direction_set(space.dim(), std::max(256, res.angles / 8));
        for (const auto& d : dirs) {
            Vec x = scale(d, 1.0 / space.norm_unchecked(d));
            Subdifferential sdx = subdifferential(space, x, res);
            for (double sign : {1.0, -1.0}) {
                auto s = side_root(x, sign);
                if (!s) continue;
                Vec y = axpy(x, -*s, zh);
                double m = kInf;
                const Functional* fbest = nullptr;
                for (const auto& f : sdx.members) {
                    double v = f(y);
                    if (v < m) {
                        m = v;
                        fbest = &f;
                    }
                }
                if (fbest && m <= 1.0 - eps) {
                    double obj = 1.0 - space.norm_unchecked(add(x, y)) / 2.0;
                    if (obj < hi) {
                        hi = obj;
                        wit = Witness{x, y, *fbest, obj};
                    }
                }
            }
        }
        out.resolution = grid_info(res.angles, res.refine_iters, "sampled base points + line roots");
    }

    // Certified floor: the direction-constrained infimum dominates delta_uacs.
    ModulusEstimate base = delta_uacs(space, eps, res);
    out.lo = std::max(0.0, base.lo);
    if (!std::isfinite(hi)) {
        out.hi = 1.0;
        out.certified = false;
        out.notes.push_back("no admissible pair found in span{z} at grid resolution");
        return out;
    }
    out.hi = std::max(hi, out.lo);
    out.witness = wit;
    out.certified = base.certified;
    out.notes.push_back("lower bound inherited from delta_uacs (restricted infimum dominates)");
    return out;
}

// ---------------------------------------------------------------------------
// heuristic sampling for dim >= 3

ModulusEstimate sampled_modulus_nd(const NormedSpace& space, ModulusKind kind, double arg,
                                   const Resolution& res) {
    int count = std::clamp(res.angles / 4, 192, 1024);
    auto dirs = direction_set(space.dim(), count);
    std::vector<Vec> pts;
    pts.reserve(dirs.size());
    for (const auto& d : dirs) pts.push_back(scale(d, 1.0 / space.norm_unchecked(d)));
    const std::size_t n = pts.size();

    ModulusEstimate out;
    out.kind = kind;
    out.argument = arg;
    out.resolution = grid_info(count, 0, "sampled directions (heuristic)");
    out.certified = false;
    out.notes.push_back("dim >= 3: sampled estimate, not certified");

    auto set_inf = [&](double best, std::optional<Witness> w) {
        out.hi = std::isfinite(best) ? std::max(best, 0.0) : 1.0;
        out.lo = 0.0;
        out.witness = std::move(w);
        if (!std::isfinite(best)) out.notes.push_back("feasible set empty in sample");
    };
    auto set_sup = [&](double best, std::optional<Witness> w) {
        out.lo = std::isfinite(best) ? std::max(best, 0.0) : 0.0;
        out.hi = out.lo * (1.0 + 5e-2) + 5e-3;  // heuristic headroom
        out.witness = std::move(w);
    };

    if (kind == ModulusKind::delta_X) {
        double best = kInf;
        std::optional<Witness> w;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                if (space.norm_unchecked(sub(pts[i], pts[j])) < arg) continue;
                double obj = 1.0 - space.norm_unchecked(add(pts[i], pts[j])) / 2.0;
                if (obj < best) {
                    best = obj;
                    w = Witness{pts[i], pts[j], std::nullopt, obj};
                }
            }
        }
        set_inf(best, w);
        return out;
    }
    if (kind == ModulusKind::rho_X || kind == ModulusKind::rho_uacs ||
        kind == ModulusKind::rho_uacs_ball || kind == ModulusKind::nonsquareness) {
        double best = -kInf;
        std::optional<Witness> w;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const Vec &x = pts[i], &y = pts[j];
                if ((kind == ModulusKind::rho_uacs || kind == ModulusKind::rho_uacs_ball) &&
                    space.norm_unchecked(add(x, y)) < 2.0 * (1.0 - arg)) {
                    continue;
                }
                double obj;
                if (kind == ModulusKind::nonsquareness) {
                    obj = std::min(space.norm_unchecked(add(x, y)), space.norm_unchecked(sub(x, y))) /
                          2.0;
                } else {
                    obj = (space.norm_unchecked(axpy(x, arg, y)) +
                           space.norm_unchecked(axpy(x, -arg, y))) /
                              2.0 -
                          1.0;
                }
                if (obj > best) {
                    best = obj;
                    w = Witness{x, y, std::nullopt, obj};
                }
            }
        }
        set_sup(best, w);
        return out;
    }
    if (kind == ModulusKind::delta_uacs || kind == ModulusKind::delta_uacs_tilde) {
        // Subdifferential candidates per base point.
        std::vector<std::vector<Functional>> cands(n);
        for (std::size_t i = 0; i < n; ++i) {
            cands[i] = subdifferential(space, pts[i], res).members;
        }
        double best = kInf;
        std::optional<Witness> w;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double m = kInf;
                const Functional* fb = nullptr;
                for (const auto& f : cands[i]) {
                    double v = f(pts[j]);
                    if (v < m) {
                        m = v;
                        fb = &f;
                    }
                }
                if (!fb || m > 1.0 - arg) continue;
                double obj;
                if (kind == ModulusKind::delta_uacs) {
                    obj = 1.0 - space.norm_unchecked(add(pts[i], pts[j])) / 2.0;
                } else {
                    obj = std::max(1.0 - space.norm_unchecked(add(pts[i], pts[j])) / 2.0,
                                   1.0 - (*fb)(pts[i]));
                }
                if (obj < best) {
                    best = obj;
                    w = Witness{pts[i], pts[j], *fb, obj};
                }
            }
        }
        set_inf(best, w);
        return out;
    }
    throw std::invalid_argument("sampled_modulus_nd: unsupported kind");
}

void check_arg(ModulusKind kind, double arg) {
    switch (kind) {
        case ModulusKind::delta_X:
        case ModulusKind::delta_uacs:
        case ModulusKind::delta_uacs_tilde:
        case ModulusKind::delta_uacsed:
            if (!(arg > 0.0) || arg > 2.0) throw std::invalid_argument("eps must lie in (0,2]");
            break;
        case ModulusKind::rho_X:
        case ModulusKind::rho_uacs:
        case ModulusKind::rho_uacs_ball:
            if (!(arg > 0.0)) throw std::invalid_argument("tau must be positive");
            break;
        case ModulusKind::nonsquareness:
            break;
    }
}

}  // namespace

// ---------------------------------------------------------------------------

ModulusEstimate delta_convexity(const NormedSpace& space, double eps, const Resolution& res) {
    check_arg(ModulusKind::delta_X, eps);
    if (space.dim() == 2) return delta_convexity_2d(space, eps, res);
    return sampled_modulus_nd(space, ModulusKind::delta_X, eps, res);
}

ModulusEstimate rho_smoothness(const NormedSpace& space, double tau, const Resolution& res) {
    check_arg(ModulusKind::rho_X, tau);
    if (space.dim() == 2) return sup_pair_scan_2d(space, ModulusKind::rho_X, tau, res);
    return sampled_modulus_nd(space, ModulusKind::rho_X, tau, res);
}

ModulusEstimate delta_uacs(const NormedSpace& space, double eps, const Resolution& res) {
    check_arg(ModulusKind::delta_uacs, eps);
    if (space.dim() == 2) return delta_uacs_2d(space, eps, res);
    return sampled_modulus_nd(space, ModulusKind::delta_uacs, eps, res);
}

ModulusEstimate delta_uacs_tilde(const NormedSpace& space, double eps, const Resolution& res) {
    check_arg(ModulusKind::delta_uacs_tilde, eps);
    if (space.dim() == 2) return delta_uacs_tilde_2d(space, eps, res);
    return sampled_modulus_nd(space, ModulusKind::delta_uacs_tilde, eps, res);
}

ModulusEstimate rho_uacs(const NormedSpace& space, double tau, const Resolution& res) {
    check_arg(ModulusKind::rho_uacs, tau);
    if (space.dim() == 2) return sup_pair_scan_2d(space, ModulusKind::rho_uacs, tau, res);
    return sampled_modulus_nd(space, ModulusKind::rho_uacs, tau, res);
}

ModulusEstimate rho_uacs_ball(const NormedSpace& space, double tau, const Resolution& res) {
    check_arg(ModulusKind::rho_uacs_ball, tau);
    if (space.dim() == 2) return rho_uacs_ball_2d(space, tau, res);
    return sampled_modulus_nd(space, ModulusKind::rho_uacs_ball, tau, res);
}

ModulusEstimate delta_uacsed(const NormedSpace& space, const Vec& z, double eps,
                             const Resolution& res) {
    return delta_uacsed_impl(space, z, eps, res);
}

ModulusEstimate nonsquareness(const NormedSpace& space, const Resolution& res) {
    if (space.dim() == 2) return sup_pair_scan_2d(space, ModulusKind::nonsquareness, 0.0, res);
    return sampled_modulus_nd(space, ModulusKind::nonsquareness, 0.0, res);
}

// ---------------------------------------------------------------------------
// independent brute-force oracle

ModulusEstimate grid_oracle_2d(const NormedSpace& space, ModulusKind kind, double argument,
                               int angle_count) {
    if (space.dim() != 2) throw std::invalid_argument("grid_oracle_2d: dim must be 2");
    if (kind == ModulusKind::delta_uacsed) {
        throw std::invalid_argument("grid_oracle_2d: delta_uacsed needs a direction, not supported");
    }
    check_arg(kind, argument);

    std::vector<double> extra;
    if (!space.has_geometry()) extra = detect_special_angles_2d(space, std::max(angle_count, 1024));
    Boundary2D bd(space, angle_count, extra);
    Lipschitz2D lip = Lipschitz2D::of(space);
    const double h = bd.max_gap();
    const double L = lip.norm_rate();
    const std::size_t n = bd.size();

    ModulusEstimate out;
    out.kind = kind;
    out.argument = argument;
    out.certified = lip.certified;
    out.resolution = grid_info(angle_count, 0, "oracle: exhaustive grid + global lipschitz slack");

    auto finish_inf = [&](double strict_min, double relaxed_min, double slack, Witness w) {
        out.hi = std::max(strict_min, 0.0);
        out.lo = std::min(std::max(0.0, relaxed_min - slack), out.hi);
        out.witness = std::move(w);
    };

    if (kind == ModulusKind::delta_X) {
        double relax = L * h, oslack = L * h / 2.0;
        double smin = kInf, rmin = kInf;
        Witness w;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                double dist = space.norm_unchecked(sub(bd.point(i), bd.point(j)));
                if (dist < argument - relax) continue;
                double obj = 1.0 - space.norm_unchecked(add(bd.point(i), bd.point(j))) / 2.0;
                rmin = std::min(rmin, obj);
                if (dist >= argument && obj < smin) {
                    smin = obj;
                    w = Witness{bd.point(i), bd.point(j), std::nullopt, obj};
                }
            }
        }
        finish_inf(smin, rmin, oslack, w);
        return out;
    }

    if (kind == ModulusKind::rho_X || kind == ModulusKind::rho_uacs ||
        kind == ModulusKind::nonsquareness || kind == ModulusKind::rho_uacs_ball) {
        bool constrained = kind == ModulusKind::rho_uacs || kind == ModulusKind::rho_uacs_ball;
        bool ns = kind == ModulusKind::nonsquareness;
        double tau = argument;
        double relax = constrained ? L * h : 0.0;
        double oslack = ns ? L * h / 2.0 : (L + tau * L) * h / 2.0;
        // Ball variant in the oracle: radial grid product.
        std::vector<double> radii = {1.0};
        if (kind == ModulusKind::rho_uacs_ball) {
            radii = {0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 1.0};
            double Cc = lip.C / lip.c;
            oslack += (1.0 + tau) * Cc * 0.1;
            relax += 2.0 * Cc * 0.1;
        }
        double smax = -kInf, rmax = -kInf;
        Witness w;
        for (std::size_t i = 0; i < n; ++i) {
            for (double r : radii) {
                Vec x = scale(bd.point(i), r);
                for (std::size_t j = (ns && radii.size() == 1) ? i : 0; j < n; ++j) {
                    for (double s : radii) {
                        Vec y = scale(bd.point(j), s);
                        if (constrained) {
                            double su = space.norm_unchecked(add(x, y));
                            if (su < 2.0 * (1.0 - tau) - relax) continue;
                            double obj = (space.norm_unchecked(axpy(x, tau, y)) +
                                          space.norm_unchecked(axpy(x, -tau, y))) /
                                             2.0 -
                                         1.0;
                            rmax = std::max(rmax, obj);
                            if (su >= 2.0 * (1.0 - tau) && obj > smax) {
                                smax = obj;
                                w = Witness{x, y, std::nullopt, obj};
                            }
                        } else {
                            double obj = ns ? std::min(space.norm_unchecked(add(x, y)),
                                                       space.norm_unchecked(sub(x, y))) /
                                                  2.0
                                            : (space.norm_unchecked(axpy(x, tau, y)) +
                                               space.norm_unchecked(axpy(x, -tau, y))) /
                                                      2.0 -
                                                  1.0;
                            rmax = std::max(rmax, obj);
                            if (obj > smax) {
                                smax = obj;
                                w = Witness{x, y, std::nullopt, obj};
                            }
                        }
                    }
                }
            }
        }
        out.lo = std::max(smax, 0.0);
        out.hi = std::max(rmax + oslack, out.lo);
        out.witness = w;
        return out;
    }

    if (kind == ModulusKind::delta_uacs) {
        SubdiffTable sd(space, bd);
        double dspeed = lip.C + lip.C * lip.C / lip.c;
        double max_gap_psi = 0.0;
        for (double g : sd.dual_gap) max_gap_psi = std::max(max_gap_psi, g);
        double mem_slack = dspeed * max_gap_psi / lip.c + lip.C * lip.boundary_speed * h;
        double oslack = L * h / 2.0;
        double smin = kInf, rmin = kInf;
        Witness w;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec& x = bd.point(i);
            for (std::size_t j = 0; j < n; ++j) {
                const Vec& y = bd.point(j);
                double m = sd.member_min(i, y);
                if (m > 1.0 - argument + mem_slack) continue;
                double obj = 1.0 - space.norm_unchecked(add(x, y)) / 2.0;
                rmin = std::min(rmin, obj);
                if (m <= 1.0 - argument && obj < smin) {
                    smin = obj;
                    double a = sd.fin[i](y), b2 = sd.fout[i](y);
                    w = Witness{x, y, a <= b2 ? sd.fin[i] : sd.fout[i], obj};
                }
            }
        }
        finish_inf(smin, rmin, oslack, w);
        return out;
    }

    if (kind == ModulusKind::delta_uacs_tilde) {
        // Reduced triple loop; relaxation over certified dual-grid functionals,
        // attained value over exactly-unit support functionals.
        int T = std::min(angle_count, 256);
        Boundary2D bt(space, T, extra);
        const std::size_t m = bt.size();
        Resolution dres;
        dres.angles = std::max(angle_count, 2048);
        std::vector<Functional> fs;
        double kappa = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            Vec u = unit_direction(bt.angle(k));
            DualNormEstimate dn = dual_norm(space, Functional(u), dres);
            fs.emplace_back(scale(u, 1.0 / dn.hi));
            kappa = std::max(kappa, (dn.hi - dn.lo) / dn.hi);
        }
        SubdiffTable sd(space, bt);
        double ht = bt.max_gap();
        double c = lip.c, C = lip.C;
        double dspeed = C / (1.0 - kappa) + (1 + kappa) * C * C / ((1 - kappa) * (1 - kappa) * c);
        double oslack = (std::max(L / 2.0, C * (1 + kappa) * lip.boundary_speed) + L / 2.0 +
                         dspeed / c) *
                            ht / 2.0 +
                        kappa * C / c;
        double relax = (C * (1 + kappa) * lip.boundary_speed + dspeed / c) * ht + kappa * C / c;
        double smin = kInf, rmin = kInf;
        Witness w;
        for (std::size_t k = 0; k < 2 * m; ++k) {
            const Functional& g = (k < m) ? sd.fin[k] : sd.fout[k - m];
            for (std::size_t i = 0; i < m; ++i) {
                double t2 = 1.0 - g(bt.point(i));
                if (t2 >= smin) continue;
                for (std::size_t j = 0; j < m; ++j) {
                    if (g(bt.point(j)) > 1.0 - argument) continue;
                    double obj = std::max(
                        1.0 - space.norm_unchecked(add(bt.point(i), bt.point(j))) / 2.0, t2);
                    if (obj < smin) {
                        smin = obj;
                        w = Witness{bt.point(i), bt.point(j), g, obj};
                    }
                }
            }
        }
        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t i = 0; i < m; ++i) {
                double t2 = 1.0 - fs[k](bt.point(i));
                if (t2 - oslack >= rmin) continue;
                for (std::size_t j = 0; j < m; ++j) {
                    double fy = fs[k](bt.point(j));
                    if (fy > 1.0 - argument + relax) continue;
                    double obj = std::max(
                        1.0 - space.norm_unchecked(add(bt.point(i), bt.point(j))) / 2.0, t2);
                    rmin = std::min(rmin, obj);
                }
            }
        }
        out.resolution = grid_info(T, 0, "oracle: exhaustive triple grid + global lipschitz slack");
        out.hi = std::isfinite(smin) ? std::max(smin, 0.0) : 1.0;
        out.lo = std::min(std::max(0.0, rmin - oslack), out.hi);
        out.witness = w;
        return out;
    }

    throw std::invalid_argument("grid_oracle_2d: unsupported kind");
}

// ---------------------------------------------------------------------------

ModulusEstimate estimate_modulus(const NormedSpace& space, ModulusKind kind, double argument,
                                 const Resolution& res) {
    switch (kind) {
        case ModulusKind::delta_X: return delta_convexity(space, argument, res);
        case ModulusKind::rho_X: return rho_smoothness(space, argument, res);
        case ModulusKind::delta_uacs: return delta_uacs(space, argument, res);
        case ModulusKind::delta_uacs_tilde: return delta_uacs_tilde(space, argument, res);
        case ModulusKind::rho_uacs: return rho_uacs(space, argument, res);
        case ModulusKind::rho_uacs_ball: return rho_uacs_ball(space, argument, res);
        case ModulusKind::nonsquareness: return nonsquareness(space, res);
        case ModulusKind::delta_uacsed:
            throw std::invalid_argument("estimate_modulus: delta_uacsed needs a direction");
    }
    throw std::invalid_argument("estimate_modulus: unknown kind");
}

namespace {

std::uint64_t space_fingerprint(const NormedSpace& space) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto mix = [&](double v) {
        std::uint64_t b = std::bit_cast<std::uint64_t>(v);
        hash ^= b;
        hash *= 0x100000001b3ULL;
    };
    mix(static_cast<double>(space.dim()));
    Rng rng(0xf00d'0000'0000'0001ULL);
    for (int k = 0; k < 8; ++k) {
        Vec v(static_cast<std::size_t>(space.dim()));
        for (double& x : v) x = rng.symmetric() + 0.1;
        mix(space.norm_unchecked(v));
    }
    return hash;
}

struct CacheKey {
    std::uint64_t fingerprint;
    std::string label;
    ModulusKind kind;
    double argument;
    int angles, tuple_angles, radial, refine;

    bool operator<(const CacheKey& o) const {
        return std::tie(fingerprint, label, kind, argument, angles, tuple_angles, radial, refine) <
               std::tie(o.fingerprint, o.label, o.kind, o.argument, o.angles, o.tuple_angles,
                        o.radial, o.refine);
    }
};

std::mutex g_cache_mutex;
std::map<CacheKey, ModulusEstimate> g_cache;

}  // namespace

ModulusEstimate estimate_modulus_cached(const NormedSpace& space, ModulusKind kind,
                                        double argument, const Resolution& res) {
    CacheKey key{space_fingerprint(space), space.label(), kind, argument,
                 res.angles,               res.tuple_angles, res.radial, res.refine_iters};
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }
    ModulusEstimate est = estimate_modulus(space, kind, argument, res);
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_cache.emplace(key, est);
    return est;
}

ModulusCurve modulus_curve(const NormedSpace& space, ModulusKind kind,
                           const std::vector<double>& arguments, const Resolution& res) {
    ModulusCurve curve;
    curve.kind = kind;
    curve.space_label = space.label();
    for (double a : arguments) curve.points.push_back(estimate_modulus(space, kind, a, res));
    return curve;
}

}  // namespace banachlab
