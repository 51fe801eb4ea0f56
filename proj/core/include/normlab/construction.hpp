#pragma once

#include <cstdint>

#include "normlab/spaces.hpp"

namespace normlab {

/// Closed-form parameter rules for the p > 2 modular space:
///   p_i = p * (1 - 1/(i + offset)),   offset = ceil(p / (p - 2)),
///   t_i = 2^(-(i + offset)/p).
/// The offset is the smallest integer making p_1 > 2 under this schedule;
/// the thresholds make the isomorphism criterion tight at K = 3 and turn
/// condition (b) into a geometric series.
struct ExponentSchedule {
    double p = 0.0;
    int offset = 0;

    double exponent(std::uint32_t i) const;
    double threshold(std::uint32_t i) const;
};

/// p > 2 required.
ExponentSchedule construct_exponents(double p);

/// SpaceSpec::modular built from construct_exponents(p).
SpaceSpec make_modular_space(double p);

/// Inputs of the two-sided comparison criterion between per-coordinate
/// families: K^{-1} N_i(t) <= M_i(t) <= K N_i(t) for i >= criterion_start and
/// t >= t_i, plus sum_i N_i(t_i) < inf. Here N_i(t) = t^p and
/// M_i(t) = t^p + t^{p_i} from the schedule.
struct IsoCriterionParams {
    double K = 3.0;
    int criterion_start = 1;
    ExponentSchedule schedule;
    ModularFamily base;  // N_i
    ModularFamily test;  // M_i

    static IsoCriterionParams for_construction(double p, double K = 3.0);
};

struct GridSpec {
    int samples_per_index = 33;
    double span_factor = 1e3;  // grid covers [t_i, t_i * span_factor], log-spaced
};

struct CriterionReport {
    double p = 0.0;
    int offset = 0;
    double K = 0.0;
    int index_budget = 0;
    double a_min_slack = 0.0;       // analytic: min over checked indices and both bounds
    double a_grid_min_slack = 0.0;  // sampled cross-check on the grid
    double b_partial_sum = 0.0;     // sum over checked indices of N_i(t_i)
    double b_tail_bound = 0.0;      // exact geometric tail beyond the budget
    bool pass = false;
};

/// Condition (a) is decided analytically for the parametric families: on
/// [t_i, inf) the ratio M_i/N_i = 1 + t^{p_i - p} decreases from its maximum
/// at t = t_i, so both bounds reduce to endpoint comparisons. The grid
/// sampling is a redundant cross-check, never the verdict.
CriterionReport check_iso_criterion(const IsoCriterionParams& params, int index_budget,
                                    const GridSpec& grid = {});

}  // namespace normlab
