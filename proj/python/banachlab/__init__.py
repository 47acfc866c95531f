"""Geometry of finite-dimensional real normed spaces.

Thin wrapper over the C++ core: catalog norms, convexity/smoothness moduli
with enclosures, R/S/acs classification, absolute sums and the
counterexample-sequence replays.
"""

from _banachlab import (  # noqa: F401
    AbsoluteNorm,
    Functional,
    NormedSpace,
    Resolution,
    SumSpace,
    __version__,
    build_absolute_lp,
    build_absolute_weighted_lp,
    build_arc2d_preset,
    build_euclid,
    build_example_62,
    build_example_63,
    build_example_64,
    build_example_65,
    build_lp,
    build_sum,
    catalog_listing,
    check_inequality,
    classify,
    delta_uacsed,
    dual_norm,
    dual_space,
    e_prime,
    grid_oracle_2d,
    modulus,
    norm_eval,
    norming_functional,
    parse_space,
    quotient_space,
    replay_example,
    smoothness_gap,
    subdifferential,
    u_plus_violation,
)
