#include "normlab/spaces.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "normlab/errors.hpp"

namespace normlab {

namespace {

bool finite_ge(double x, double bound) {
    return std::isfinite(x) && x >= bound;
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// ModularFamily

ModularFamily ModularFamily::pure_power(double p) {
    if (!finite_ge(p, 1.0)) throw input_error("pure_power requires finite p >= 1");
    return ModularFamily(FamilyKind::pure_power, p, 0.0, 0);
}

ModularFamily ModularFamily::orlicz_pr(double p, double r) {
    if (!std::isfinite(p) || !std::isfinite(r) || !(1.0 < p && p < r && r < 2.0))
        throw input_error("orlicz_pr requires 1 < p < r < 2");
    return ModularFamily(FamilyKind::orlicz_pr, p, r, 0);
}

ModularFamily ModularFamily::modular_ppi(double p, int i0) {
    if (!std::isfinite(p) || p <= 2.0) throw input_error("modular_ppi requires finite p > 2");
    if (i0 < 1) throw input_error("modular_ppi requires offset i0 >= 1");
    // p_i increases with i, so p_1 > 2 gives 2 < p_i < p for every index.
    const double p1 = p * (1.0 - 1.0 / (1.0 + i0));
    if (!(p1 > 2.0))
        throw input_error("modular_ppi offset too small: p_1 = " + format_number(p1) +
                          " is not > 2");
    return ModularFamily(FamilyKind::modular_ppi, p, 0.0, i0);
}

double ModularFamily::r() const {
    if (kind_ != FamilyKind::orlicz_pr) throw input_error("family has no exponent r");
    return r_;
}

int ModularFamily::offset() const {
    if (kind_ != FamilyKind::modular_ppi) throw input_error("family has no index offset");
    return i0_;
}

double ModularFamily::exponent(std::uint32_t i) const {
    if (kind_ != FamilyKind::modular_ppi) throw input_error("family has no per-index exponents");
    if (i == 0) throw input_error("coordinate indices are 1-based");
    return p_ * (1.0 - 1.0 / (static_cast<double>(i) + i0_));
}

double ModularFamily::eval(std::uint32_t i, double t) const {
    if (t < 0.0 || !std::isfinite(t)) throw input_error("M_i is defined for finite t >= 0");
    switch (kind_) {
        case FamilyKind::pure_power:
            return std::pow(t, p_);
        case FamilyKind::orlicz_pr:
            return std::pow(t, p_) + std::pow(t, r_);
        case FamilyKind::modular_ppi:
            return std::pow(t, p_) + std::pow(t, exponent(i));
    }
    return 0.0;  // unreachable
}

// ---------------------------------------------------------------------------
// SpaceSpec

SpaceSpec SpaceSpec::lp(double p) {
    if (std::isinf(p) && p > 0) return SpaceSpec(std::nullopt, "lp:inf");
    return SpaceSpec(ModularFamily::pure_power(p), "lp:" + format_number(p));
}

SpaceSpec SpaceSpec::orlicz(double p, double r) {
    return SpaceSpec(ModularFamily::orlicz_pr(p, r),
                     "orlicz:" + format_number(p) + "," + format_number(r));
}

SpaceSpec SpaceSpec::modular(double p, int i0) {
    return SpaceSpec(ModularFamily::modular_ppi(p, i0),
                     "modular:" + format_number(p) + ",i0=" + std::to_string(i0));
}

const ModularFamily& SpaceSpec::family() const {
    if (!family_) throw input_error("the sup-norm space has no modular family");
    return *family_;
}

double SpaceSpec::p() const {
    return family_ ? family_->p() : std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Norm engine

namespace {

// The modular of any supported family collapses to a power profile
//   f(rho) = sum_k coeff_k * rho^(-expo_k),
// strictly decreasing in rho on (0, inf) for a nonzero vector. The first
// term accumulates the common t^p part, so pure_power and orlicz_pr cost
// O(1) pow calls per evaluation regardless of support size.
struct PowerProfile {
    std::vector<double> coeff;
    std::vector<double> expo;
    double lp_seed = 0.0;  // (sum |x_i|^p)^(1/p), the bracketing start

    bool empty() const { return coeff.empty(); }

    double eval(double rho) const {
        double s = 0.0;
        for (std::size_t k = 0; k < coeff.size(); ++k) s += coeff[k] * std::pow(rho, -expo[k]);
        return s;
    }
};

template <typename EntryRange>
PowerProfile build_profile(const ModularFamily& fam, const EntryRange& entries) {
    PowerProfile prof;
    const double p = fam.p();
    double sum_p = 0.0;
    for (const auto& [index, value] : entries) {
        if (value == 0.0) continue;
        const double a = std::abs(value);
        sum_p += std::pow(a, p);
        switch (fam.kind()) {
            case FamilyKind::pure_power:
                break;
            case FamilyKind::orlicz_pr:
            case FamilyKind::modular_ppi: {
                const double e =
                    fam.kind() == FamilyKind::orlicz_pr ? fam.r() : fam.exponent(index);
                if (prof.coeff.empty()) {
                    prof.coeff.push_back(0.0);  // slot 0 reserved for the t^p part
                    prof.expo.push_back(p);
                }
                prof.coeff.push_back(std::pow(a, e));
                prof.expo.push_back(e);
                break;
            }
        }
    }
    if (sum_p == 0.0) return prof;  // zero vector
    if (prof.coeff.empty()) {
        prof.coeff.push_back(sum_p);
        prof.expo.push_back(p);
    } else {
        prof.coeff[0] = sum_p;
    }
    // For orlicz_pr all extra terms share the exponent r; fold them together.
    if (fam.kind() == FamilyKind::orlicz_pr && prof.coeff.size() > 2) {
        double sum_r = 0.0;
        for (std::size_t k = 1; k < prof.coeff.size(); ++k) sum_r += prof.coeff[k];
        prof.coeff = {prof.coeff[0], sum_r};
        prof.expo = {p, fam.r()};
    }
    prof.lp_seed = std::pow(sum_p, 1.0 / p);
    return prof;
}

struct IndexedDense {
    std::span<const double> values;

    struct Ref {
        std::uint32_t index;
        double value;
    };
    struct Iter {
        const double* ptr;
        std::uint32_t index;
        Ref operator*() const { return {index, *ptr}; }
        Iter& operator++() {
            ++ptr;
            ++index;
            return *this;
        }
        bool operator!=(const Iter& o) const { return ptr != o.ptr; }
    };
    Iter begin() const { return {values.data(), 1}; }
    Iter end() const { return {values.data() + values.size(), 0}; }
};

struct DenseEntryAdapter {
    // structured-bindings shim so build_profile can walk dense blocks
    std::span<const double> values;
    auto begin() const { return IndexedDense{values}.begin(); }
    auto end() const { return IndexedDense{values}.end(); }
};

double solve_unit_modular(const PowerProfile& prof, double rel_tol) {
    // Geometric bracketing from the l_p seed, then bisection. The profile is
    // strictly decreasing from +inf to 0, so the unit level is always hit.
    double lo = prof.lp_seed;
    double hi = prof.lp_seed;
    const int kMaxSteps = 1100;
    double f0 = prof.eval(lo);
    if (f0 > 1.0) {
        int steps = 0;
        while (prof.eval(hi) > 1.0) {
            lo = hi;
            hi *= 2.0;
            if (++steps > kMaxSteps)
                throw numeric_error("luxemburg bracket expansion failed: lo=" +
                                    format_number(lo) + " hi=" + format_number(hi));
        }
    } else if (f0 < 1.0) {
        int steps = 0;
        while (prof.eval(lo) < 1.0) {
            hi = lo;
            lo *= 0.5;
            if (++steps > kMaxSteps)
                throw numeric_error("luxemburg bracket contraction failed: lo=" +
                                    format_number(lo) + " hi=" + format_number(hi));
        }
    } else {
        return lo;
    }
    int iters = 0;
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at rounding resolution
        (prof.eval(mid) > 1.0 ? lo : hi) = mid;
        if (++iters > 400)
            throw numeric_error("luxemburg bisection stalled: bracket [" + format_number(lo) +
                                ", " + format_number(hi) + "]");
    }
    return 0.5 * (lo + hi);
}

double sup_norm_dense(std::span<const double> dense) {
    double m = 0.0;
    for (double v : dense) m = std::max(m, std::abs(v));
    return m;
}

void check_tol(double rel_tol) {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
        throw input_error("relative tolerance must be positive and finite");
}

}  // namespace

double modular_sum(const SpaceSpec& space, const FiniteVector& x, double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw input_error("modular_sum requires rho > 0");
    const ModularFamily& fam = space.family();
    double s = 0.0;
    for (const auto& e : x.entries()) s += fam.eval(e.index, std::abs(e.value) / rho);
    return s;
}

double luxemburg_norm(const SpaceSpec& space, const FiniteVector& x, double rel_tol) {
    check_tol(rel_tol);
    if (space.is_sup()) {
        double m = 0.0;
        for (const auto& e : x.entries()) m = std::max(m, std::abs(e.value));
        return m;
    }
    if (x.is_zero()) return 0.0;
    struct EntryView {
        const std::vector<FiniteVector::Entry>& v;
        auto begin() const { return v.begin(); }
        auto end() const { return v.end(); }
    };
    PowerProfile prof = build_profile(space.family(), EntryView{x.entries()});
    if (prof.empty()) return 0.0;
    return solve_unit_modular(prof, rel_tol);
}

double luxemburg_norm(const SpaceSpec& space, std::span<const double> dense, double rel_tol) {
    check_tol(rel_tol);
    if (space.is_sup()) return sup_norm_dense(dense);
    PowerProfile prof = build_profile(space.family(), DenseEntryAdapter{dense});
    if (prof.empty()) return 0.0;
    return solve_unit_modular(prof, rel_tol);
}

double lp_norm(double p, const FiniteVector& x) {
    if (std::isinf(p) && p > 0) {
        double m = 0.0;
        for (const auto& e : x.entries()) m = std::max(m, std::abs(e.value));
        return m;
    }
    if (!finite_ge(p, 1.0)) throw input_error("lp_norm requires p >= 1 or p = inf");
    if (x.is_zero()) return 0.0;
    // factor out the largest coordinate so large p cannot overflow
    double m = 0.0;
    for (const auto& e : x.entries()) m = std::max(m, std::abs(e.value));
    double s = 0.0;
    for (const auto& e : x.entries()) s += std::pow(std::abs(e.value) / m, p);
    return m * std::pow(s, 1.0 / p);
}

double conjugate_index(double q) {
    if (!std::isfinite(q) || !(q > 1.0)) throw input_error("conjugate index requires 1 < q < inf");
    return q / (q - 1.0);
}

double distance(const SpaceSpec& space, const FiniteVector& x, const FiniteVector& y) {
    return luxemburg_norm(space, x - y);
}

}  // namespace normlab
