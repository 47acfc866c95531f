#pragma once

#include <vector>

#include "banachlab/estimate.hpp"
#include "banachlab/normcore.hpp"
#include "banachlab/space.hpp"

namespace banachlab {

/// delta_X(eps) = inf { 1 - |x+y|/2 : x,y in B_X, |x-y| >= eps }.
/// Searched on the sphere; interior pairs are sampled as a consistency check.
ModulusEstimate delta_convexity(const NormedSpace& space, double eps, const Resolution& res = {});

/// rho_X(tau) = sup { (|x+ty|+|x-ty|)/2 - 1 : x,y in S_X }.
ModulusEstimate rho_smoothness(const NormedSpace& space, double tau, const Resolution& res = {});

/// delta_uacs(eps) = inf { 1 - |(x+y)/2| : (x,y) in D_X(eps) } where D_X(eps)
/// asks for a norming functional f of x with f(y) <= 1 - eps. The existential
/// quantifier is resolved by minimizing over the subdifferential of x (exact
/// segment endpoints in 2D).
ModulusEstimate delta_uacs(const NormedSpace& space, double eps, const Resolution& res = {});

/// delta~_uacs(eps) = inf { max(1 - |x+y|/2, 1 - f(x)) : x,y in S_X,
/// f in S_X* with f(y) <= 1 - eps }. Triple search; the dual sphere is
/// discretized through the dual_space tabulation.
ModulusEstimate delta_uacs_tilde(const NormedSpace& space, double eps, const Resolution& res = {});

/// rho_uacs(tau) = sup { (|x+ty|+|x-ty|)/2 - 1 : x,y in S_X, |x+y| >= 2(1-tau) }.
ModulusEstimate rho_uacs(const NormedSpace& space, double tau, const Resolution& res = {});

/// Ball variant: x,y range over B_X instead of S_X.
ModulusEstimate rho_uacs_ball(const NormedSpace& space, double tau, const Resolution& res = {});

/// Directional variant: the D_X(eps) infimum restricted to x - y in span{z}.
ModulusEstimate delta_uacsed(const NormedSpace& space, const Vec& z, double eps,
                             const Resolution& res = {});

/// NS(X) = sup { min(|x+y|, |x-y|)/2 : x,y in B_X }; uniformly non-square
/// iff NS(X) < 1.
ModulusEstimate nonsquareness(const NormedSpace& space, const Resolution& res = {});

/// Independent brute-force oracle: plain double/triple loops over angle grids
/// with global Lipschitz slack from the equivalence constants. 2D only.
ModulusEstimate grid_oracle_2d(const NormedSpace& space, ModulusKind kind, double argument,
                               int angle_count);

/// Dispatch by kind (delta_uacsed excluded; it needs a direction).
ModulusEstimate estimate_modulus(const NormedSpace& space, ModulusKind kind, double argument,
                                 const Resolution& res = {});

/// Same, memoized per (space fingerprint, kind, argument, resolution).
ModulusEstimate estimate_modulus_cached(const NormedSpace& space, ModulusKind kind,
                                        double argument, const Resolution& res = {});

ModulusCurve modulus_curve(const NormedSpace& space, ModulusKind kind,
                           const std::vector<double>& arguments, const Resolution& res = {});

}  // namespace banachlab
