#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "banachlab/vec.hpp"

namespace banachlab {

/// Deterministic splitmix64 generator; all sampling in the library flows
/// through fixed seeds so repeated runs are byte-identical.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// In [-1, 1].
    double symmetric() { return 2.0 * uniform() - 1.0; }

    double gaussian();

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Golden-section minimization of a convex (or unimodal) function on [a,b];
/// fixed iteration count keeps it deterministic.
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          int iters, double* arg_out = nullptr);

/// Deterministic direction set on the Euclidean unit sphere of R^dim:
/// coordinate axes, +-{0,1} lattice directions, then fixed-seed Gaussian
/// fill-up to `count` entries.
std::vector<Vec> direction_set(int dim, int count);

/// Coordinate-descent polish: minimizes `objective` over `vars` subject to
/// `feasible`, trying +-step moves per coordinate and halving the step when
/// stuck. Deterministic, fixed iteration count.
void coordinate_polish(std::vector<double>& vars, double step0, int iters,
                       const std::function<double(const std::vector<double>&)>& objective,
                       const std::function<bool(const std::vector<double>&)>& feasible);

}  // namespace banachlab
