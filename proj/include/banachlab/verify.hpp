#pragma once

#include <optional>
#include <string>
#include <vector>

#include "banachlab/estimate.hpp"
#include "banachlab/space.hpp"
#include "banachlab/sums.hpp"

namespace banachlab {

enum class CheckStatus { verified, inconclusive, violated, vacuous };
const char* to_string(CheckStatus s);

struct CheckPoint {
    double eps = 0.0;
    double tau = 0.0;
    CheckStatus status = CheckStatus::inconclusive;
    double margin = 0.0;  // strong-direction slack LHS.lo - RHS.hi
    std::string detail;
};

struct InequalityReport {
    std::string inequality_id;
    std::string space_label;
    std::vector<CheckPoint> points;
    std::vector<std::string> notes;

    bool any_violation() const;
    int count(CheckStatus s) const;
};

/// Lemma: delta_uacs(eps) >= (eps*tau - 2 rho_uacs(tau)) / (2(tau+1)).
InequalityReport check_delta_rho(const NormedSpace& space, const std::vector<double>& eps_grid,
                                 const std::vector<double>& tau_grid, const Resolution& res = {});

/// Lemma: if 2 tau < delta~_uacs(eps) then 2 rho_uacs(tau) <= tau * eps
/// (tau fixed conservatively at 0.49 * delta~.lo).
InequalityReport check_delta_tilde_rho(const NormedSpace& space,
                                       const std::vector<double>& eps_grid,
                                       const Resolution& res = {});

/// Uniform continuity: |delta_uacs(e) - delta_uacs(e')| <= |e-e'|/min(e,e')
/// on adjacent grid pairs inside (0,1).
InequalityReport check_lipschitz_delta_uacs(const NormedSpace& space,
                                            const std::vector<double>& eps_grid,
                                            const Resolution& res = {});

/// Duality: (i) delta_uacs^X(e) + rho_uacs^X*(t) >= te/2,
///          (ii) delta_uacs^X*(e) + rho~_uacs^X(t) >= te/2,
///          (iii) delta_uacs^X(e) >= delta_uacs^X*(delta_uacs^X*(e)).
std::vector<InequalityReport> check_dual_inequalities(const NormedSpace& space,
                                                      const std::vector<double>& eps_grid,
                                                      const std::vector<double>& tau_grid,
                                                      const Resolution& res = {});

/// rho_uacs(t) < t/2 implies uniform non-squareness; contrapositive on square
/// spaces.
InequalityReport check_superreflexivity_criterion(const NormedSpace& space,
                                                  const std::vector<double>& t_grid,
                                                  const Resolution& res = {});

/// Dual acs versus 2D-quotient acs agreement on sampled subspaces.
InequalityReport check_quotient_acs(const NormedSpace& space, int sample_count,
                                    const Resolution& res = {});

/// acs sums, finite uacs sums, and the lifted-witness converse.
InequalityReport check_sum_theorems(const SumSpace& sum, const std::vector<double>& eps_grid,
                                    const Resolution& res = {});

/// Two-sided derivative tests on flat pairs (p in {1,2} variants).
InequalityReport check_acs_characterizations(const NormedSpace& space, int pair_samples,
                                             const Resolution& res = {});

// ---------------------------------------------------------------------------
// exact replays of the counterexample sequences

struct ReplayClaim {
    std::string name;
    enum class Kind { equality, limit, bound } kind = Kind::equality;
    bool pass = false;
    double value = 0.0;        // value at n_max (or the checked quantity)
    double target = 0.0;       // claimed value or limit
    double gap = 0.0;          // |value - target| at n_max
    double last_step = 0.0;    // |v(n_max) - v(n_max - 1)| for limits
    bool monotone = true;      // limit claims: trend direction never reverses
    double closed_form_gap = 0.0;  // |computed - closed form| at n_max
};

struct SequenceReplay {
    int example_id = 0;
    int n = 0;
    std::vector<std::pair<std::string, double>> quantities;
};

struct ReplayReport {
    int example_id = 0;
    int n_max = 0;
    std::vector<SequenceReplay> rows;
    std::vector<ReplayClaim> claims;
    std::vector<std::string> notes;
    bool all_equalities_pass() const;
};

/// id in {62, 63, 64, 65}; constructs the explicit vectors in truncated
/// spaces (dimension auto-sized), evaluates every claimed quantity, verifies
/// equalities to 1e-12 and limits by monotone trend plus closed forms.
ReplayReport replay_example(int id, int n_max, const Resolution& res = {});

}  // namespace banachlab
