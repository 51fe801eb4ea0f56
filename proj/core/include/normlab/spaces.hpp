#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "normlab/finite_vector.hpp"

namespace normlab {

enum class FamilyKind { pure_power, orlicz_pr, modular_ppi };

/// Per-coordinate convex functions M_i(t) from the two parametric families
/// t^p + t^r and t^p + t^{p_i}, plus the pure power t^p.
///
/// Exponent constraints are enforced at construction:
///   pure_power:   p >= 1
///   orlicz_pr:    1 < p < r < 2
///   modular_ppi:  p > 2 and p_1 = p(1 - 1/(1+i0)) > 2, with
///                 p_i = p(1 - 1/(i + i0)) strictly increasing to p.
class ModularFamily {
public:
    static ModularFamily pure_power(double p);
    static ModularFamily orlicz_pr(double p, double r);
    static ModularFamily modular_ppi(double p, int i0);

    FamilyKind kind() const { return kind_; }
    double p() const { return p_; }

    /// Second exponent of the orlicz_pr family.
    double r() const;

    /// Index offset i0 of the modular_ppi exponent rule.
    int offset() const;

    /// p_i for modular_ppi (closed-form rule, never materialized as a list).
    double exponent(std::uint32_t i) const;

    /// M_i(t) for t >= 0.
    double eval(std::uint32_t i, double t) const;

private:
    ModularFamily(FamilyKind kind, double p, double r, int i0)
        : kind_(kind), p_(p), r_(r), i0_(i0) {}

    FamilyKind kind_;
    double p_;
    double r_ = 0.0;  // orlicz_pr only
    int i0_ = 0;      // modular_ppi only
};

/// A target space: classical l_p (p in [1, inf], sup norm at p = inf),
/// Orlicz l_M, or modular l_{M_i}.
class SpaceSpec {
public:
    /// p >= 1 or +infinity.
    static SpaceSpec lp(double p);
    static SpaceSpec orlicz(double p, double r);
    static SpaceSpec modular(double p, int i0);

    /// True for the sup-norm space l_inf (no modular family).
    bool is_sup() const { return !family_.has_value(); }

    const ModularFamily& family() const;
    const std::string& label() const { return label_; }

    /// Exponent p of the family (or +infinity for the sup space).
    double p() const;

private:
    SpaceSpec(std::optional<ModularFamily> family, std::string label)
        : family_(std::move(family)), label_(std::move(label)) {}

    std::optional<ModularFamily> family_;
    std::string label_;
};

/// Sum_i M_i(|x_i|/rho). Finite by finite support; 0 iff x = 0.
/// rho <= 0 or a sup-norm space is an input error.
double modular_sum(const SpaceSpec& space, const FiniteVector& x, double rho);

/// Luxemburg norm: 0 for x = 0, otherwise the unique rho with
/// modular_sum(space, x, rho) = 1, found by geometric bracketing from the
/// l_p seed and bisection to the given relative tolerance on rho.
/// For the sup space this is max |x_i|.
double luxemburg_norm(const SpaceSpec& space, const FiniteVector& x, double rel_tol = 1e-12);

/// Same root-finder on a dense coordinate block (used by the optimizers to
/// avoid sparse-vector churn in hot loops).
double luxemburg_norm(const SpaceSpec& space, std::span<const double> dense, double rel_tol = 1e-12);

/// Closed-form (sum |x_i|^p)^(1/p), or max |x_i| for p = inf. p < 1 is an error.
double lp_norm(double p, const FiniteVector& x);

/// q' with 1/q + 1/q' = 1, for q in (1, inf).
double conjugate_index(double q);

/// luxemburg_norm(space, x - y).
double distance(const SpaceSpec& space, const FiniteVector& x, const FiniteVector& y);

}  // namespace normlab
