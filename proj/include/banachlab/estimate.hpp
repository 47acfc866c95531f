#pragma once

#include <optional>
#include <string>
#include <vector>

#include "banachlab/vec.hpp"

namespace banachlab {

enum class ModulusKind {
    delta_X,
    rho_X,
    delta_uacs,
    delta_uacs_tilde,
    rho_uacs,
    rho_uacs_ball,
    delta_uacsed,
    nonsquareness,
};

const char* to_string(ModulusKind k);
std::optional<ModulusKind> modulus_kind_from_string(const std::string& s);

/// Configuration attaching to every heavy solve, reported in outputs.
struct Resolution {
    int angles = 4096;        // pair scans (2D) / sample count (dim >= 3)
    int tuple_angles = 512;   // per-axis grid for triple searches
    int radial = 17;          // radial grid for ball variants
    int refine_iters = 50;    // deterministic coordinate-descent polish
    int dual_points = 16384;  // dual-space boundary tabulation
};

struct Witness {
    Vec x;
    Vec y;
    std::optional<Functional> f;
    double value = 0.0;  // objective value the witness attains
};

struct GridInfo {
    int angles = 0;
    int refine_iters = 0;
    std::string method;
};

/// Enclosure [lo, hi] for a modulus value. For infimum-type moduli hi is
/// attained by the witness and lo carries the certificate; for supremum-type
/// moduli the roles flip.
struct ModulusEstimate {
    ModulusKind kind = ModulusKind::delta_X;
    double argument = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool certified = false;
    std::optional<Witness> witness;
    GridInfo resolution;
    std::vector<std::string> notes;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

/// A modulus sampled over an argument grid.
struct ModulusCurve {
    ModulusKind kind = ModulusKind::delta_X;
    std::string space_label;
    std::vector<ModulusEstimate> points;
};

}  // namespace banachlab
