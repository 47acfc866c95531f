#pragma once

#include <string>
#include <vector>

#include "banachlab/catalog.hpp"
#include "banachlab/estimate.hpp"
#include "banachlab/space.hpp"

namespace banachlab {

/// Absolute sum [⊕_i X_i]_E of finitely many spaces: the norm applies E to
/// the vector of component norms.
class SumSpace {
public:
    SumSpace(std::vector<NormedSpace> components, AbsoluteNorm E);

    const std::vector<NormedSpace>& components() const { return components_; }
    const AbsoluteNorm& E() const { return E_; }
    const NormedSpace& space() const { return space_; }
    int total_dim() const { return space_.dim(); }

    std::vector<Vec> split(const Vec& x) const;
    Vec concat(const std::vector<Vec>& parts) const;

private:
    std::vector<NormedSpace> components_;
    AbsoluteNorm E_;
    NormedSpace space_;
};

SumSpace build_sum(std::vector<NormedSpace> components, AbsoluteNorm E);

/// The dual-type absolute norm |a|_E' = sup_{b in B_E} sum_i |a_i b_i|,
/// realized as the support function over a tabulated boundary (certified for
/// m = 2, sampled for m >= 3).
AbsoluteNorm e_prime(const AbsoluteNorm& E, const Resolution& res = {});

/// Componentwise functionals concatenated into a functional on the sum.
Functional pair_sum_functional(const std::vector<Functional>& fs);

struct UPlusViolation {
    double value = 0.0;
    bool feasible = false;  // constraint set nonempty at grid resolution
    Vec a, b, c;
};

/// max over a,b in S_E with |a+b|_E >= 2(1-delta) and norming c of a of
/// sum_i |c_i| |a_i - b_i|. Property (u+) at eps needs some delta making this
/// <= eps; eps is carried through for reporting only.
UPlusViolation u_plus_violation(const AbsoluteNorm& E, double delta, double eps,
                                const Resolution& res = {});

/// Componentwise delta_uacs enclosures combined by interval minimum.
ModulusEstimate min_component_uacs(const std::vector<NormedSpace>& components, double eps,
                                   const Resolution& res = {});

/// Lifts an acs-violation witness of one component into the sum: the witness
/// occupies `slot`, all other slots are zero, and the functional is the
/// component functional in that slot (E normalized makes it unit).
Witness lift_acs_witness(const SumSpace& sum, std::size_t slot, const Witness& w);

}  // namespace banachlab
