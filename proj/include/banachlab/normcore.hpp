#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "banachlab/estimate.hpp"
#include "banachlab/space.hpp"

namespace banachlab {

double norm_eval(const NormedSpace& space, const Vec& v);

/// Recomputes Euclidean equivalence constants from the black box: certified
/// via the grid-gap correction in 2D, heuristic (flag false) in dim >= 3.
struct EquivalenceEstimate {
    double lo = 0.0;
    double hi = 0.0;
    bool certified = false;
};
EquivalenceEstimate equivalence_constants(const NormedSpace& space, const Resolution& res = {});

struct DualNormEstimate {
    double lo = 0.0;
    double hi = 0.0;
    bool certified = false;
    Vec witness;  // point of B_X at which f attains lo
    GridInfo resolution;
};

/// Enclosure of sup { f(x) : |x| <= 1 }.
DualNormEstimate dual_norm(const NormedSpace& space, const Functional& f,
                           const Resolution& res = {});

/// A norming functional of x: f(x) >= |x| - tol, |f|* <= 1 + tol. Analytic
/// subgradient when available; otherwise the dual support problem is solved
/// numerically with a lexicographic tie-break at non-smooth points.
Functional norming_functional(const NormedSpace& space, const Vec& x, const Resolution& res = {});

struct Subdifferential {
    Vec base;
    std::vector<Functional> members;
    bool exact = false;
};

/// Norming functionals of a unit vector. In 2D: the two endpoint functionals
/// obtained from one-sided boundary tangents (exact when the space carries
/// exact geometry). In dim >= 3: a sampled subset, exact = false.
Subdifferential subdifferential(const NormedSpace& space, const Vec& x, const Resolution& res = {});

/// Extrapolated limit of (|x+ty| + |x-ty| - 2)/t along a decreasing schedule;
/// nonnegative, zero iff the norm is smooth at x in direction y.
double smoothness_gap(const NormedSpace& space, const Vec& x, const Vec& y,
                      std::vector<double> t_schedule = {});

/// Numerical dual space: evaluator is the midpoint of the dual_norm enclosure
/// (polyhedral support-function core times the certified midpoint factor).
NormedSpace dual_space(const NormedSpace& space, const Resolution& res = {});

/// Quotient X/U on an orthonormal complement coordinate system; evaluator is
/// inf { |x - u| : u in U } by convex minimization over the U-coefficients.
NormedSpace quotient_space(const NormedSpace& space, const std::vector<Vec>& subspace_basis,
                           const Resolution& res = {});

/// One-sided tangents of the unit-sphere curve of a 2D space at direction
/// theta: exact geometry when available, else extrapolated differences.
TangentPair boundary_tangents_2d(const NormedSpace& space, double theta);

/// Corner and flat-segment directions of a 2D space: the exact special angles
/// when the space provides geometry, otherwise detected numerically from
/// subdifferential gaps (bisection refinement).
std::vector<double> detect_special_angles_2d(const NormedSpace& space, int scan_angles = 4096);

}  // namespace banachlab
