#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "banachlab/space.hpp"
#include "banachlab/vec.hpp"

namespace banachlab {

// ---------------------------------------------------------------------------
// lp spaces

/// l^p norm on R^n, 1 <= p <= infinity (pass p = infinity for the max norm).
/// Analytic subgradient for 1 < p < infinity; exact 2D boundary geometry for
/// every p when n == 2. Equivalence constants are the sharp ones.
NormedSpace build_lp(int n, double p);

inline NormedSpace build_euclid(int n) { return build_lp(n, 2.0); }

// ---------------------------------------------------------------------------
// Renormings of l^1 / l^2 truncated to R^m (finite-support sequence spaces).

/// |x|^2 = |x|_1^2 + |x|_2^2  (LUR and URED, not wuacs).
NormedSpace build_example_62(int m);

/// |x|^2 = max{|x(1)|, |x'|_2}^2 + |Tx|_2^2 with Tx = (x(1), a_2 x(2), ...),
/// weights decreasing in (0,1], a_1 = 1. Default weights a_k = 1/k.
/// (WUR and URED, not MLUR.)
NormedSpace build_example_63(int m, std::vector<double> alpha = {});

/// |x| = max{|x(1)|, |x'|_1} + |x|_2  (rotund, not mluacs).
NormedSpace build_example_64(int m);

/// |x|_M^2 = |x|_1^2 + |x'|_2^2 + (|x'|_1 + |x|_2)^2  (MLUR, not luacs).
NormedSpace build_example_65(int m);

// ---------------------------------------------------------------------------
// 2D norms from boundary arcs

/// One piece of the upper unit-sphere curve, traversed from left to right
/// (from (-r,0) towards (+r,0)).
struct ArcPiece {
    enum class Kind { Segment, EllipticArc };
    Kind kind = Kind::Segment;
    // Endpoints, traversal a -> b.
    double ax = 0, ay = 0, bx = 0, by = 0;
    // EllipticArc only: p(t) = (cx + ra*cos t, cy + rb*sin t), t from ta to tb.
    double cx = 0, cy = 0, ra = 0, rb = 0, ta = 0, tb = 0;

    static ArcPiece segment(double ax, double ay, double bx, double by);
    static ArcPiece elliptic(double cx, double cy, double ra, double rb, double ta, double tb);
};

/// Upper-half-plane boundary curve from (-r,0) to (r,0); the full unit sphere
/// is the union with its antipodal copy.
struct Arc2DSpec {
    std::vector<ArcPiece> pieces;
    std::string name;
};

/// Validates the spec (connectivity, symmetry endpoints, convexity, origin
/// interior) and builds the Minkowski-functional norm. Ray/piece intersection
/// is in closed form.
NormedSpace build_arc2d(const Arc2DSpec& spec);

/// Named presets: "ex61" (flat top/bottom with smooth elliptic junctions and
/// corners on the x-axis) and "fig5" (diamond with rounded top/bottom
/// vertices, sharp at (+-2,0)).
Arc2DSpec arc2d_preset(const std::string& name);

// ---------------------------------------------------------------------------
// Absolute normalized norms on R^m (the E of absolute sums)

struct AbsoluteCertification {
    bool absolute = false;
    bool normalized = false;
    bool monotone = false;
    bool sandwich = false;  // |a|_inf <= |a|_E <= |a|_1 on samples
    std::string failure;    // first failed axiom, with witness
};

/// Norm on R^m certified (by sampling) absolute and normalized.
class AbsoluteNorm {
public:
    AbsoluteNorm() = default;
    AbsoluteNorm(int dim, std::function<double(const Vec&)> evaluator, std::string label,
                 int sample_budget = 1000);

    int dim() const { return dim_; }
    const std::string& label() const { return label_; }
    double operator()(const Vec& a) const;
    bool certified_absolute() const { return cert_.absolute; }
    bool certified_normalized() const { return cert_.normalized; }
    bool certified() const { return cert_.absolute && cert_.normalized && cert_.monotone && cert_.sandwich; }
    const AbsoluteCertification& certification() const { return cert_; }

    /// The same norm as a NormedSpace (equivalence constants from the
    /// l1/linf sandwich, valid once certified).
    NormedSpace as_space() const;

    /// Analytic subgradient if attached (lp kinds have one).
    bool has_subgrad() const { return static_cast<bool>(subgrad_); }
    Functional subgrad(const Vec& a) const;
    void attach_subgrad(std::function<Functional(const Vec&)> sg) { subgrad_ = std::move(sg); }

    /// Sharper Euclidean equivalence constants than the generic l1/linf
    /// sandwich, when known.
    void set_equiv(double lo, double hi) { equiv_lo_ = lo; equiv_hi_ = hi; }
    /// Optional exact 2D geometry (tangents, special angles).
    void set_geometry(Geometry2D g) { geometry_ = std::move(g); }

private:
    int dim_ = 0;
    std::function<double(const Vec&)> eval_;
    std::function<Functional(const Vec&)> subgrad_;
    std::string label_;
    AbsoluteCertification cert_;
    double equiv_lo_ = 0.0, equiv_hi_ = 0.0;  // 0 = use the sandwich defaults
    Geometry2D geometry_;
};

AbsoluteNorm build_absolute_lp(int m, double p);
AbsoluteNorm build_absolute_weighted_lp(int m, double p, std::vector<double> weights);
AbsoluteNorm build_absolute_custom(int m, std::function<double(const Vec&)> evaluator,
                                   std::string label);

}  // namespace banachlab
