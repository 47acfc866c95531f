#include "banachlab/sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "banachlab/moduli.hpp"
#include "banachlab/normcore.hpp"
#include "banachlab/numerics.hpp"

namespace banachlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SumSpace::SumSpace(std::vector<NormedSpace> components, AbsoluteNorm E)
    : components_(std::move(components)), E_(std::move(E)) {
    if (components_.empty()) throw std::invalid_argument("SumSpace: no components");
    if (E_.dim() != static_cast<int>(components_.size())) {
        throw std::invalid_argument("SumSpace: E dimension must match the component count");
    }
    if (!E_.certified()) {
        throw std::invalid_argument("SumSpace: E must be certified absolute and normalized (" +
                                    E_.certification().failure + ")");
    }

    int total = 0;
    for (const auto& c : components_) total += c.dim();
    std::vector<NormedSpace> comps = components_;
    AbsoluteNorm Ecopy = E_;

    auto norm_vector = [comps](const Vec& x) {
        Vec norms(comps.size());
        std::size_t off = 0;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            std::size_t d = static_cast<std::size_t>(comps[i].dim());
            Vec part(x.begin() + static_cast<long>(off), x.begin() + static_cast<long>(off + d));
            norms[i] = comps[i].norm_unchecked(part);
            off += d;
        }
        return norms;
    };

    SpaceDef def;
    def.dim = total;
    def.evaluator = [Ecopy, norm_vector](const Vec& x) { return Ecopy(norm_vector(x)); };

    // Subgradient composed via the chain rule for absolute compositions:
    // slot i gets g_i * f_i where g norms the vector of component norms in E
    // and f_i norms x_i; zero slots get the zero functional.
    bool all_sub = E_.has_subgrad();
    for (const auto& c : components_) all_sub = all_sub && c.has_subgrad();
    if (all_sub) {
        def.subgrad = [Ecopy, comps, norm_vector](const Vec& x) {
            Vec norms = norm_vector(x);
            Functional g = Ecopy.subgrad(norms);
            Vec out;
            std::size_t off = 0;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                std::size_t d = static_cast<std::size_t>(comps[i].dim());
                Vec part(x.begin() + static_cast<long>(off), x.begin() + static_cast<long>(off + d));
                if (norms[i] < 1e-300) {
                    out.insert(out.end(), d, 0.0);
                } else {
                    Functional fi = comps[i].subgrad(part);
                    for (double v : fi.coords) out.push_back(g.coords[i] * v);
                }
                off += d;
            }
            return Functional(std::move(out));
        };
    }

    NormedSpace Espace = E_.as_space();
    double cmin = kInf, cmax = 0.0;
    bool cert = Espace.equiv_certified();
    for (const auto& c : components_) {
        cmin = std::min(cmin, c.equiv_lo());
        cmax = std::max(cmax, c.equiv_hi());
        cert = cert && c.equiv_certified();
    }
    def.equiv_lo = Espace.equiv_lo() * cmin;
    def.equiv_hi = Espace.equiv_hi() * cmax;
    def.equiv_certified = cert;

    std::ostringstream lab;
    lab << "sum(E=" << E_.label() << ";";
    for (std::size_t i = 0; i < components_.size(); ++i) {
        lab << (i ? "," : "") << components_[i].label();
    }
    lab << ")";
    def.label = lab.str();
    space_ = NormedSpace(std::move(def));
}

std::vector<Vec> SumSpace::split(const Vec& x) const {
    ensure_dim(x, static_cast<std::size_t>(total_dim()), "sum vector");
    std::vector<Vec> parts;
    std::size_t off = 0;
    for (const auto& c : components_) {
        std::size_t d = static_cast<std::size_t>(c.dim());
        parts.emplace_back(x.begin() + static_cast<long>(off), x.begin() + static_cast<long>(off + d));
        off += d;
    }
    return parts;
}

Vec SumSpace::concat(const std::vector<Vec>& parts) const {
    Vec out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

SumSpace build_sum(std::vector<NormedSpace> components, AbsoluteNorm E) {
    return SumSpace(std::move(components), std::move(E));
}

// ---------------------------------------------------------------------------

AbsoluteNorm e_prime(const AbsoluteNorm& E, const Resolution& res) {
    if (!E.certified()) throw std::invalid_argument("e_prime: E must be certified");
    const int m = E.dim();
    NormedSpace Es = E.as_space();

    std::vector<Vec> table;
    if (m == 2) {
        // Axis angles pinned so |e_i|_E' evaluates to exactly one.
        Boundary2D bd(Es, std::max(res.dual_points, 1024),
                      {0.0, M_PI / 2, M_PI, 3 * M_PI / 2});
        table.reserve(bd.size());
        for (std::size_t i = 0; i < bd.size(); ++i) table.push_back(bd.point(i));
    } else {
        auto dirs = direction_set(m, std::min(res.dual_points, 4096));
        table.reserve(dirs.size());
        for (const auto& d : dirs) table.push_back(scale(d, 1.0 / Es.norm_unchecked(d)));
    }
    // Keep coordinate magnitudes only; the supremum sees |a_i b_i|.
    for (auto& p : table) {
        for (double& v : p) v = std::abs(v);
    }

    auto shared = std::make_shared<std::vector<Vec>>(std::move(table));
    auto eval = [shared](const Vec& a) {
        double best = 0.0;
        for (const auto& p : *shared) {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i]) * p[i];
            best = std::max(best, s);
        }
        return best;
    };
    AbsoluteNorm out(m, eval, E.label() + "'");
    return out;
}

Functional pair_sum_functional(const std::vector<Functional>& fs) {
    if (fs.empty()) throw std::invalid_argument("pair_sum_functional: no components");
    Vec out;
    for (const auto& f : fs) out.insert(out.end(), f.coords.begin(), f.coords.end());
    return Functional(std::move(out));
}

// ---------------------------------------------------------------------------

UPlusViolation u_plus_violation(const AbsoluteNorm& E, double delta, double eps,
                                const Resolution& res) {
    if (!(delta > 0.0) || !(eps > 0.0)) {
        throw std::invalid_argument("u_plus_violation: delta and eps must be positive");
    }
    (void)eps;  // carried through for reporting; the search depends on delta only
    NormedSpace Es = E.as_space();
    const int m = E.dim();
    UPlusViolation out;

    auto objective = [](const Vec& c, const Vec& a, const Vec& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) s += std::abs(c[i]) * std::abs(a[i] - b[i]);
        return s;
    };

    if (m == 2) {
        Boundary2D bd(Es, std::min(res.angles, 1024));
        const std::size_t n = bd.size();
        // Norming vectors of a: the subdifferential endpoints (the objective is
        // convex in c, so segment endpoints dominate).
        for (std::size_t i = 0; i < n; ++i) {
            const Vec& a = bd.point(i);
            if (a[0] < -1e-12 || a[1] < -1e-12) continue;  // WLOG a >= 0 by absoluteness
            auto sd = subdifferential(Es, a, res);
            for (std::size_t j = 0; j < n; ++j) {
                const Vec& b = bd.point(j);
                if (Es.norm_unchecked(add(a, b)) < 2.0 * (1.0 - delta)) continue;
                out.feasible = true;
                for (const auto& c : sd.members) {
                    double v = objective(c.coords, a, b);
                    if (v > out.value) {
                        out.value = v;
                        out.a = a;
                        out.b = b;
                        out.c = c.coords;
                    }
                }
            }
        }
        return out;
    }

    // m >= 3: sampled heuristic with the analytic subgradient when present.
    auto dirs = direction_set(m, std::clamp(res.angles / 8, 128, 512));
    std::vector<Vec> pts;
    for (const auto& d : dirs) pts.push_back(scale(d, 1.0 / Es.norm_unchecked(d)));
    for (const auto& araw : pts) {
        Vec a = araw;
        for (double& v : a) v = std::abs(v);
        Vec c;
        if (E.has_subgrad()) {
            c = E.subgrad(a).coords;
        } else {
            c = norming_functional(Es, a, res).coords;
        }
        for (const auto& b : pts) {
            if (Es.norm_unchecked(add(a, b)) < 2.0 * (1.0 - delta)) continue;
            out.feasible = true;
            double v = objective(c, a, b);
            if (v > out.value) {
                out.value = v;
                out.a = a;
                out.b = b;
                out.c = c;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

ModulusEstimate min_component_uacs(const std::vector<NormedSpace>& components, double eps,
                                   const Resolution& res) {
    if (components.empty()) throw std::invalid_argument("min_component_uacs: no components");
    ModulusEstimate out;
    out.kind = ModulusKind::delta_uacs;
    out.argument = eps;
    out.lo = kInf;
    out.hi = kInf;
    out.certified = true;
    std::size_t which = 0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        auto est = delta_uacs(components[i], eps, res);
        if (est.hi < out.hi) {
            out.hi = est.hi;
            out.witness = est.witness;
            which = i;
        }
        out.lo = std::min(out.lo, est.lo);
        out.certified = out.certified && est.certified;
        out.resolution = est.resolution;
    }
    out.notes.push_back("interval minimum over components; minimizing component index " +
                        std::to_string(which));
    return out;
}

Witness lift_acs_witness(const SumSpace& sum, std::size_t slot, const Witness& w) {
    if (slot >= sum.components().size()) throw std::invalid_argument("lift_acs_witness: bad slot");
    std::vector<Vec> xs, ys;
    std::vector<Functional> fs;
    for (std::size_t i = 0; i < sum.components().size(); ++i) {
        std::size_t d = static_cast<std::size_t>(sum.components()[i].dim());
        if (i == slot) {
            xs.push_back(w.x);
            ys.push_back(w.y);
            fs.emplace_back(w.f ? w.f->coords : Vec(d, 0.0));
        } else {
            xs.emplace_back(d, 0.0);
            ys.emplace_back(d, 0.0);
            fs.emplace_back(Vec(d, 0.0));
        }
    }
    Witness out;
    out.x = sum.concat(xs);
    out.y = sum.concat(ys);
    out.f = pair_sum_functional(fs);
    out.value = 1.0 - sum.space().norm_unchecked(add(out.x, out.y)) / 2.0;
    return out;
}

}  // namespace banachlab
