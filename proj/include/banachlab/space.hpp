#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "banachlab/vec.hpp"

namespace banachlab {

/// One-sided unit tangent vectors of the 2D unit-sphere curve at a boundary
/// point, with respect to counterclockwise traversal. At smooth points
/// incoming == outgoing.
struct TangentPair {
    Vec incoming;  // limit from smaller angles
    Vec outgoing;  // limit from larger angles
};

/// Optional exact geometric knowledge a 2D space can expose about its unit
/// sphere. Black-box spaces leave these empty and get numeric fallbacks.
struct Geometry2D {
    /// Directions (angles in [0,2pi)) of non-smooth boundary points and of
    /// endpoints of boundary line segments.
    std::function<std::vector<double>()> special_angles;
    /// Exact one-sided tangents at the boundary point in direction theta.
    std::function<TangentPair(double theta)> tangents;
    bool exact = false;
};

struct SpaceDef {
    int dim = 0;
    std::function<double(const Vec&)> evaluator;
    /// Norming functional at nonzero x: f(x)=|x|, |f|*=1. Optional.
    std::function<Functional(const Vec&)> subgrad;
    /// Certified constants c,C with c|v|_2 <= |v| <= C|v|_2.
    double equiv_lo = 0.0;
    double equiv_hi = 0.0;
    std::string label;
    Geometry2D geometry;  // 2D only, optional
    bool equiv_certified = true;
};

/// A finite-dimensional real normed space given by a black-box evaluator,
/// optional analytic subgradient and a Euclidean equivalence certificate.
/// Immutable and cheap to copy.
class NormedSpace {
public:
    NormedSpace() = default;
    explicit NormedSpace(SpaceDef def);

    int dim() const { return impl_->dim; }
    const std::string& label() const { return impl_->label; }
    double equiv_lo() const { return impl_->equiv_lo; }
    double equiv_hi() const { return impl_->equiv_hi; }
    bool equiv_certified() const { return impl_->equiv_certified; }

    /// Norm evaluation with input validation.
    double norm(const Vec& v) const;
    double operator()(const Vec& v) const { return norm(v); }

    /// Raw evaluation without validation (hot loops).
    double norm_unchecked(const Vec& v) const { return impl_->evaluator(v); }

    bool has_subgrad() const { return static_cast<bool>(impl_->subgrad); }
    Functional subgrad(const Vec& x) const;

    bool has_geometry() const { return static_cast<bool>(impl_->geometry.tangents); }
    const Geometry2D& geometry() const { return impl_->geometry; }
    std::vector<double> special_angles() const;

    NormedSpace relabeled(std::string label) const;

private:
    std::shared_ptr<const SpaceDef> impl_;
};

/// Grid/Lipschitz data for 2D boundary scans, derived from the equivalence
/// certificate: the unit-sphere curve b(theta) = u(theta)/|u(theta)| has
/// Euclidean speed at most boundary_speed, and theta -> |b(theta) + w| is
/// Lipschitz with constant equiv_hi * boundary_speed for any fixed w.
struct Lipschitz2D {
    double c = 0.0;              // equiv_lo
    double C = 0.0;              // equiv_hi
    double boundary_speed = 0.0; // 1/c + C/c^2
    bool certified = false;

    static Lipschitz2D of(const NormedSpace& s);
    double norm_rate() const { return C * boundary_speed; }
};

/// Precomputed boundary points of a 2D space on the uniform angle grid plus
/// the space's special angles (sorted, deduplicated).
class Boundary2D {
public:
    Boundary2D(const NormedSpace& space, int angle_count, std::vector<double> extra_angles = {});

    const NormedSpace& space() const { return space_; }
    std::size_t size() const { return angles_.size(); }
    double angle(std::size_t i) const { return angles_[i]; }
    const Vec& point(std::size_t i) const { return points_[i]; }
    /// Largest gap between adjacent grid angles (wraps around).
    double max_gap() const { return max_gap_; }

    /// Boundary point in direction theta (computed, not looked up).
    Vec at(double theta) const;

private:
    NormedSpace space_;
    std::vector<double> angles_;
    std::vector<Vec> points_;
    double max_gap_ = 0.0;
};

Vec unit_direction(double theta);
/// Boundary point of a 2D space in direction theta.
Vec boundary_point(const NormedSpace& space, double theta);

}  // namespace banachlab
