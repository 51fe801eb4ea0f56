#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "normlab/finite_vector.hpp"
#include "normlab/spaces.hpp"

namespace normlab {

enum class Branch { p_lt_2, p_gt_2 };

/// Signed slacks of the four Clarkson inequalities with r = min(p, p').
/// Nonnegative slack means the inequality holds.
struct ClarksonReport {
    double p = 0.0;
    double r = 0.0;
    double slack_lower_1 = 0.0;  // (||x+y||^r' + ||x-y||^r') - 2(||x||^r' + ||y||^r')
    double slack_upper_1 = 0.0;  // 2^(r'-1)(||x||^r' + ||y||^r') - (||x+y||^r' + ||x-y||^r')
    double slack_lower_2 = 0.0;  // (||x+y||^r + ||x-y||^r) - 2^(r-1)(||x||^r + ||y||^r)
    double slack_upper_2 = 0.0;  // 2(||x||^r + ||y||^r) - (||x+y||^r + ||x-y||^r)

    double min_slack() const;
};

ClarksonReport clarkson_check(double p, const FiniteVector& x, const FiniteVector& y);

/// Structured verdict of an obstruction chain evaluated on a concrete pair:
/// every term, the slack of the Clarkson step, and the positive defect that
/// rules out the isometry equations having an exact solution.
struct ObstructionCertificate {
    struct Term {
        std::uint32_t index;
        double value;        // T_i = |x_i+y_i|^{p_i} + |x_i-y_i|^{p_i}
        double coefficient;  // 2^{1-p_i} - 2^{p_i(1/p-1)}, positive for 2 < p_i < p
    };

    Branch branch = Branch::p_lt_2;
    std::array<double, 4> residuals{};  // r1, r2: unit-norm; r3, r4: ||x+-y|| vs target
    double A = 0.0;                     // l_p part of the chain
    double B = 0.0;                     // r-part (p < 2 branch only)
    std::vector<Term> term_series;      // per-coordinate terms (p > 2 branch only)
    double defect = 0.0;
    double chain_slack = 0.0;
    double identity_gap = 0.0;  // chain_slack + defect: per-instance deviation of the
                                // isometry identity, > 0 whenever the pair is nonzero
    std::string verdict = "inconsistent";
};

/// p < 2 chain in an Orlicz space l_M, M(t) = t^p + t^r. Unit-norm inputs are
/// expected within 1e-6; violations are recorded in residuals r1, r2 rather
/// than thrown. x = y = 0 is a degenerate-input error.
ObstructionCertificate obstruction_certificate_p_lt_2(const SpaceSpec& space,
                                                      const FiniteVector& x,
                                                      const FiniteVector& y);

/// p > 2 chain in a modular space with M_i(t) = t^p + t^{p_i}.
ObstructionCertificate obstruction_certificate_p_gt_2(const SpaceSpec& space,
                                                      const FiniteVector& x,
                                                      const FiniteVector& y);

/// 2 - ||u+v|| for distinct unit vectors in a strictly convex family
/// (orlicz_pr, modular_ppi, or pure_power with p > 1). u = v is degenerate.
double strict_convexity_gap(const SpaceSpec& space, const FiniteVector& u,
                            const FiniteVector& v);

/// Explicit quadruple in l_1 or l_inf with two distinct metric midpoints.
/// gaps holds the residuals of the six pairwise distances in the order
/// ab, ac, ad, bc, bd, cd: pairs touching the midpoints are measured against
/// d(a,d)/2, the ad entry against d(a,d) itself (zero by construction), and
/// the bc entry is the raw separation ||b - c||.
struct MidpointWitness {
    double p = 1.0;  // 1 or inf
    FiniteVector a, b, c, d;
    std::array<double, 6> gaps{};
    double separation = 0.0;
};

MidpointWitness midpoint_witness(double p);

/// min(||x/||x|| + y/||y||||, ||x/||x|| - y/||y||||) in the space's norm.
/// Zero x or y is an input error.
double james_objective(const SpaceSpec& space, const FiniteVector& x, const FiniteVector& y);

}  // namespace normlab
