#include "normlab/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normlab/errors.hpp"

namespace normlab {

double ClarksonReport::min_slack() const {
    return std::min(std::min(slack_lower_1, slack_upper_1),
                    std::min(slack_lower_2, slack_upper_2));
}

ClarksonReport clarkson_check(double p, const FiniteVector& x, const FiniteVector& y) {
    if (!std::isfinite(p) || !(p > 1.0)) throw input_error("clarkson_check requires 1 < p < inf");
    const double pc = conjugate_index(p);
    const double r = std::min(p, pc);
    const double rc = conjugate_index(r);  // r' = max(p, p')

    const double nx = lp_norm(p, x);
    const double ny = lp_norm(p, y);
    const double ns = lp_norm(p, x + y);
    const double nd = lp_norm(p, x - y);

    ClarksonReport rep;
    rep.p = p;
    rep.r = r;

    const double sum_rc = std::pow(nx, rc) + std::pow(ny, rc);
    const double mix_rc = std::pow(ns, rc) + std::pow(nd, rc);
    rep.slack_lower_1 = mix_rc - 2.0 * sum_rc;
    rep.slack_upper_1 = std::pow(2.0, rc - 1.0) * sum_rc - mix_rc;

    const double sum_r = std::pow(nx, r) + std::pow(ny, r);
    const double mix_r = std::pow(ns, r) + std::pow(nd, r);
    rep.slack_lower_2 = mix_r - std::pow(2.0, r - 1.0) * sum_r;
    rep.slack_upper_2 = 2.0 * sum_r - mix_r;
    return rep;
}

namespace {

constexpr double kUnitTol = 1e-6;  // unit-norm precondition band; residuals recorded regardless

void require_nonzero_pair(const FiniteVector& x, const FiniteVector& y) {
    if (x.is_zero() && y.is_zero())
        throw degenerate_input_error("obstruction certificate on x = y = 0");
}

}  // namespace

ObstructionCertificate obstruction_certificate_p_lt_2(const SpaceSpec& space,
                                                      const FiniteVector& x,
                                                      const FiniteVector& y) {
    if (space.is_sup() || space.family().kind() != FamilyKind::orlicz_pr)
        throw input_error("p < 2 obstruction requires an orlicz_pr space");
    require_nonzero_pair(x, y);

    const double p = space.family().p();
    const double r = space.family().r();
    const FiniteVector sum = x + y;
    const FiniteVector diff = x - y;

    ObstructionCertificate cert;
    cert.branch = Branch::p_lt_2;
    cert.residuals[0] = luxemburg_norm(space, x) - 1.0;
    cert.residuals[1] = luxemburg_norm(space, y) - 1.0;

    const double target = std::pow(2.0, 1.0 / p);
    cert.residuals[2] = luxemburg_norm(space, sum) - target;
    cert.residuals[3] = luxemburg_norm(space, diff) - target;

    cert.A = std::pow(lp_norm(p, sum), p) + std::pow(lp_norm(p, diff), p);
    cert.B = std::pow(lp_norm(r, sum), r) + std::pow(lp_norm(r, diff), r);
    cert.chain_slack = 4.0 - (cert.A + cert.B);
    cert.defect = (1.0 - std::pow(2.0, 1.0 - r / p)) * cert.B;
    cert.identity_gap = cert.chain_slack + cert.defect;
    return cert;
}

ObstructionCertificate obstruction_certificate_p_gt_2(const SpaceSpec& space,
                                                      const FiniteVector& x,
                                                      const FiniteVector& y) {
    if (space.is_sup() || space.family().kind() != FamilyKind::modular_ppi)
        throw input_error("p > 2 obstruction requires a modular_ppi space");
    require_nonzero_pair(x, y);

    const ModularFamily& fam = space.family();
    const double p = fam.p();
    const FiniteVector sum = x + y;
    const FiniteVector diff = x - y;

    ObstructionCertificate cert;
    cert.branch = Branch::p_gt_2;
    cert.residuals[0] = luxemburg_norm(space, x) - 1.0;
    cert.residuals[1] = luxemburg_norm(space, y) - 1.0;

    const double target = std::pow(2.0, 1.0 - 1.0 / p);
    cert.residuals[2] = luxemburg_norm(space, sum) - target;
    cert.residuals[3] = luxemburg_norm(space, diff) - target;

    cert.A = std::pow(2.0, 1.0 - p) *
             (std::pow(lp_norm(p, sum), p) + std::pow(lp_norm(p, diff), p));

    // coordinate series over the union of supports; omitted indices are exactly 0
    double clarkson_part = 0.0;
    double defect = 0.0;
    auto is = sum.entries().begin();
    auto id = diff.entries().begin();
    const auto es = sum.entries().end();
    const auto ed = diff.entries().end();
    while (is != es || id != ed) {
        std::uint32_t idx;
        double vs = 0.0, vd = 0.0;
        if (id == ed || (is != es && is->index < id->index)) {
            idx = is->index;
            vs = is->value;
            ++is;
        } else if (is == es || id->index < is->index) {
            idx = id->index;
            vd = id->value;
            ++id;
        } else {
            idx = is->index;
            vs = is->value;
            vd = id->value;
            ++is;
            ++id;
        }
        const double pi = fam.exponent(idx);
        const double term = std::pow(std::abs(vs), pi) + std::pow(std::abs(vd), pi);
        const double coeff = std::pow(2.0, 1.0 - pi) - std::pow(2.0, pi * (1.0 / p - 1.0));
        cert.term_series.push_back({idx, term, coeff});
        clarkson_part += std::pow(2.0, 1.0 - pi) * term;
        defect += coeff * term;
    }
    cert.chain_slack = 2.0 - (cert.A + clarkson_part);
    cert.defect = defect;
    cert.identity_gap = cert.chain_slack + cert.defect;
    return cert;
}

double strict_convexity_gap(const SpaceSpec& space, const FiniteVector& u,
                            const FiniteVector& v) {
    if (space.is_sup() ||
        (space.family().kind() == FamilyKind::pure_power && !(space.family().p() > 1.0)))
        throw input_error("strict convexity gap requires a strictly convex family");
    if (u == v) throw degenerate_input_error("strict convexity gap on u = v");
    const double nu = luxemburg_norm(space, u);
    const double nv = luxemburg_norm(space, v);
    if (std::abs(nu - 1.0) > kUnitTol || std::abs(nv - 1.0) > kUnitTol)
        throw input_error("strict convexity gap expects unit vectors (within 1e-6)");
    return 2.0 - luxemburg_norm(space, u + v);
}

MidpointWitness midpoint_witness(double p) {
    const bool inf_case = std::isinf(p) && p > 0;
    if (!inf_case && p != 1.0) throw input_error("midpoint witness exists for p in {1, inf}");

    MidpointWitness w;
    w.p = p;
    const FiniteVector e1 = FiniteVector::unit(1);
    const FiniteVector e2 = FiniteVector::unit(2);
    if (inf_case) {
        w.a = -e1;
        w.b = FiniteVector{};
        w.c = e2;
        w.d = e1;
    } else {
        w.a = FiniteVector{};
        w.b = e1;
        w.c = e2;
        w.d = e1 + e2;
    }

    const double full = lp_norm(p, w.a - w.d);
    const double half = full / 2.0;
    w.gaps[0] = lp_norm(p, w.a - w.b) - half;   // ab
    w.gaps[1] = lp_norm(p, w.a - w.c) - half;   // ac
    w.gaps[2] = lp_norm(p, w.a - w.d) - full;   // ad
    w.separation = lp_norm(p, w.b - w.c);
    w.gaps[3] = w.separation;                   // bc (raw separation, must be > 0)
    w.gaps[4] = lp_norm(p, w.b - w.d) - half;   // bd
    w.gaps[5] = lp_norm(p, w.c - w.d) - half;   // cd
    return w;
}

double james_objective(const SpaceSpec& space, const FiniteVector& x, const FiniteVector& y) {
    const double nx = luxemburg_norm(space, x);
    const double ny = luxemburg_norm(space, y);
    if (nx == 0.0 || ny == 0.0) throw input_error("james objective requires nonzero vectors");
    const FiniteVector xn = (1.0 / nx) * x;
    const FiniteVector yn = (1.0 / ny) * y;
    return std::min(luxemburg_norm(space, xn + yn), luxemburg_norm(space, xn - yn));
}

}  // namespace normlab
