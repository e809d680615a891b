#include "lemlab/bounds.hpp"

#include "lemlab/disk_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lemlab {

LowerBoundConstants lower_bound_constant(double c0) {
    if (!(c0 > 0.0 && c0 <= 1.0))
        throw DomainError("lower_bound_constant: c0 must lie in (0, 1]");

    // Doubling search for the smallest CH_prime meeting every threshold:
    //   6 / (c0 CH')^2 < c0 / 2      (final triangle margin)
    //   (c0 CH')^2 >= 2              (|w1|, |zeta1| lower-bound absorption)
    //   c0 CH' >= 2                  (argument-separation lemma applicability)
    double ch = 1.0;
    auto ok = [&]() {
        const double a = c0 * ch;
        return 6.0 / (a * a) < 0.5 * c0 && a * a >= 2.0 && a >= 2.0;
    };
    for (int i = 0; i < 4096 && !ok(); ++i) ch *= 2.0;
    return LowerBoundConstants{c0, ch, std::log(ch), 50.0, 100.0};
}

double arg_condition(const BidiskPoint& z, const PoleConfig& p) {
    if (z.z1 == cplx(0.0) || z.z2 == cplx(0.0))
        throw ZeroInput("arg_condition: needs z1, z2 nonzero");
    return std::abs(circle_projection(z.z1 / z.z2) + circle_projection(p.eps1 / p.eps2));
}

namespace {

double reduced_arg(cplx ratio) { return std::arg(ratio); }

}  // namespace

ChainReport chain_certificate(const BidiskPoint& z, const PoleConfig& p, const NodeTriple& n,
                              double c0, const LowerBoundConstants& consts) {
    if (z.z1 == cplx(0.0) || z.z2 == cplx(0.0))
        throw HypothesisViolated("chain_certificate: z must avoid the coordinate axes");
    constexpr double slop = 1e-12;  // keeps exact-ratio data inside the gate
    const double ratio = std::abs(z.z1 / z.z2);
    if (ratio < c0 * (1.0 - slop) || ratio > (1.0 + slop) / c0)
        throw HypothesisViolated("chain_certificate: |z1/z2| escapes [c0, 1/c0]");
    const double ac = arg_condition(z, p);
    if (ac < c0 * (1.0 - slop))
        throw HypothesisViolated("chain_certificate: direction condition below c0");

    const double ch = consts.CH_prime;
    const double zn = z.norm();
    const double zsqrt = std::sqrt(zn);
    const double e1 = std::abs(p.eps1);
    const double emax = std::max(e1, std::abs(p.eps2));
    const bool smallness = emax <= 1e-3 * zn * zn * zn;

    ChainReport r{};
    r.w = w_values(n, p, z);
    r.cost = normalized_cost(n);
    r.bar = 1.5 * std::log(zn) - std::log(ch);
    r.hypothesis_holds = r.cost <= r.bar;
    r.smallness_ok = smallness;

    const double gap1 = pseudo_distance(n.zeta1, n.zeta0) - pseudo_distance(r.w.w1, r.w.w2);
    const double gap2 = pseudo_distance(n.zeta2, n.zeta0) - pseudo_distance(r.w.w3, r.w.w4);
    const double wmax =
        std::max({std::abs(r.w.w1), std::abs(r.w.w2), std::abs(r.w.w3), std::abs(r.w.w4)});
    r.premises_hold = wmax < 1.0 && gap1 > 0.0 && gap2 > 0.0;

    auto push = [&](const std::string& name, double lhs, double rhs, bool holds,
                    bool needs_smallness) {
        r.steps.push_back(ChainStep{name, lhs, rhs, holds, needs_smallness ? smallness : true});
    };

    const double d10 = pseudo_distance(n.zeta1, n.zeta0);
    const double d20 = pseudo_distance(n.zeta2, n.zeta0);
    const double d12 = pseudo_distance(n.zeta1, n.zeta2);
    const double z0m = std::abs(n.zeta0);
    const double z1m = std::abs(n.zeta1);

    double lhs, rhs;

    lhs = d10, rhs = std::pow(zn, 1.5) / (std::abs(z.z1) * ch);
    push("dist_zeta1_zeta0_upper", lhs, rhs, lhs < rhs, false);

    lhs = d20, rhs = std::pow(zn, 1.5) / (std::abs(z.z2) * ch);
    push("dist_zeta2_zeta0_upper", lhs, rhs, lhs < rhs, false);

    lhs = z0m, rhs = c0 * ch * zsqrt;
    push("zeta0_lower", lhs, rhs, lhs > rhs, false);

    lhs = std::abs(r.w.w2), rhs = c0 * ch * zsqrt / z0m;
    push("w2_lower", lhs, rhs, lhs > rhs, false);

    lhs = std::abs(r.w.w1), rhs = c0 * ch * zsqrt / (2.0 * z0m);
    push("w1_lower", lhs, rhs, lhs >= rhs, false);

    lhs = z1m, rhs = 0.5 * z0m;
    push("zeta1_lower", lhs, rhs, lhs >= rhs, false);

    lhs = d12, rhs = 4.0 * e1 / (c0 * ch * zsqrt);
    push("dist_zeta1_zeta2_upper", lhs, rhs, lhs <= rhs, true);

    lhs = std::abs(reduced_arg(n.zeta1 / n.zeta2)), rhs = 24.0 * e1 / (c0 * ch * c0 * ch * zn);
    push("arg_zeta_ratio", lhs, rhs, lhs <= rhs, true);

    lhs = std::abs(circle_projection(r.w.w1 / r.w.w4) - circle_projection(-p.eps1 / p.eps2));
    rhs = consts.c1_audit * e1 / (c0 * ch * zsqrt);
    push("arg_w1w4_vs_eps", lhs, rhs, lhs <= rhs, true);

    lhs = std::abs(
        reduced_arg(mobius_apply(n.zeta0, n.zeta1) / mobius_apply(n.zeta0, n.zeta2)));
    rhs = 12.0 * e1 / (ch * std::pow(zn, 1.5));
    push("arg_phi_ratio", lhs, rhs, lhs <= rhs, true);

    lhs = std::abs(circle_projection(r.w.w2 / r.w.w3) - circle_projection(z.z1 / z.z2));
    rhs = consts.c2_audit * e1 / (c0 * ch * std::pow(zn, 1.5));
    push("arg_w2w3_vs_z", lhs, rhs, lhs <= rhs, true);

    lhs = ac;
    rhs = 6.0 / (c0 * ch * c0 * ch) + consts.c1_audit * e1 / (c0 * ch * zsqrt) +
          consts.c2_audit * e1 / (c0 * ch * std::pow(zn, 1.5));
    push("triangle_combined", lhs, rhs, lhs <= rhs, true);

    bool all_steps = true;
    for (const ChainStep& s : r.steps) all_steps = all_steps && s.holds;
    r.contradiction_witness = r.hypothesis_holds && r.premises_hold && all_steps;
    return r;
}

}  // namespace lemlab
