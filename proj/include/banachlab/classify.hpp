#pragma once

#include <optional>
#include <string>
#include <vector>

#include "banachlab/estimate.hpp"
#include "banachlab/normcore.hpp"
#include "banachlab/space.hpp"

namespace banachlab {

enum class Verdict { holds, fails, inconclusive };
const char* to_string(Verdict v);

/// Maximal affine piece of a 2D unit sphere.
struct FlatSegment2D {
    Vec a, b;                   // endpoints
    double angle_a, angle_b;    // boundary directions
    bool a_smooth = false, b_smooth = false;
    double length = 0.0;        // |a - b| in the space's norm
};

struct RotundWitness {
    Vec x, y;  // distinct unit vectors with |x+y| ~ 2
};
struct SmoothWitness {
    Vec x;
    Functional f1, f2;
    double pairing_gap = 0.0;  // sup over the ball of (f1 - f2)
};
struct AcsWitness {
    Vec x, y;
    Functional f;  // norms x, but f(y) stays away from 1
};
struct LauWitness {
    Vec x, y;
    Functional fx, fy;
    double dual_sum_norm = 0.0;  // |fx + fy|*, far below 2
};

struct ClassificationOptions {
    double tol = 1e-4;
    /// Certification scales for the "holds" verdicts (recorded in the report):
    /// both moduli can degenerate quadratically in eps (delta_X always does;
    /// delta_uacs does near flat segments with smooth junctions), so the
    /// positivity certificates run at scales where first-order enclosures can
    /// resolve them. The violation search stays at the 10*tol scale.
    double rotund_cert_eps = 0.15;
    double acs_cert_eps = 0.5;
    Resolution res;
};

struct ClassificationReport {
    std::string space_label;
    Verdict rotund = Verdict::inconclusive;
    Verdict smooth = Verdict::inconclusive;
    Verdict acs = Verdict::inconclusive;
    Verdict lau = Verdict::inconclusive;
    double tol = 0.0;
    double rotund_cert_eps = 0.0, acs_cert_eps = 0.0;
    bool heuristic = false;  // dim >= 3 searches are not certified
    std::optional<RotundWitness> rotund_witness;
    std::optional<SmoothWitness> smooth_witness;
    std::optional<AcsWitness> acs_witness;
    std::optional<LauWitness> lau_witness;
    std::vector<FlatSegment2D> flat_segments;  // 2D only
    std::vector<std::string> notes;
};

std::vector<FlatSegment2D> flat_segments_2d(const NormedSpace& space, const Resolution& res = {});

Verdict is_rotund(const NormedSpace& space, const ClassificationOptions& opt,
                  std::optional<RotundWitness>* witness = nullptr,
                  std::vector<std::string>* notes = nullptr);
Verdict is_smooth(const NormedSpace& space, const ClassificationOptions& opt,
                  std::optional<SmoothWitness>* witness = nullptr,
                  std::vector<std::string>* notes = nullptr);
Verdict is_acs(const NormedSpace& space, const ClassificationOptions& opt,
               std::optional<AcsWitness>* witness = nullptr,
               std::vector<std::string>* notes = nullptr);
/// 2D certified; checks that every pair of norming functionals of a flat pair
/// has |fx + fy|* ~ 2. Heuristic in dim >= 3.
Verdict lau_condition(const NormedSpace& space, const ClassificationOptions& opt,
                      std::optional<LauWitness>* witness = nullptr,
                      std::vector<std::string>* notes = nullptr);

ClassificationReport classify_space(const NormedSpace& space, const ClassificationOptions& opt = {});

}  // namespace banachlab
