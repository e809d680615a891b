#include "lemlab/lempert_core.hpp"

#include <algorithm>
#include <cmath>

namespace lemlab {

double normalized_cost(const NodeTriple& n) {
    return std::log(std::abs(n.zeta0)) + std::log(pseudo_distance(n.zeta0, n.zeta1)) +
           std::log(pseudo_distance(n.zeta0, n.zeta2));
}

WValues w_values(const NodeTriple& n, const PoleConfig& p, const BidiskPoint& z) {
    const cplx d1 = n.zeta1 * mobius_apply(n.zeta2, n.zeta1);
    const cplx d2 = n.zeta0 * mobius_apply(n.zeta2, n.zeta0);
    const cplx d3 = n.zeta0 * mobius_apply(n.zeta1, n.zeta0);
    const cplx d4 = n.zeta2 * mobius_apply(n.zeta1, n.zeta2);
    constexpr double tiny = 1e-30;
    if (std::abs(d1) < tiny || std::abs(d2) < tiny || std::abs(d3) < tiny || std::abs(d4) < tiny)
        throw DegenerateNodes("w_values: node configuration degenerates a denominator");
    return WValues{p.eps1 / d1, z.z1 / d2, z.z2 / d3, p.eps2 / d4};
}

FeasibilityReport node_feasible(const NodeTriple& n, const PoleConfig& p, const BidiskPoint& z) {
    const WValues w = w_values(n, p, z);

    const TwoPointVerdict v1 = two_point_feasible({n.zeta1, w.w1, n.zeta0, w.w2});
    const TwoPointVerdict v2 = two_point_feasible({n.zeta2, w.w4, n.zeta0, w.w3});

    FeasibilityReport r{};
    r.w1 = w.w1;
    r.w2 = w.w2;
    r.w3 = w.w3;
    r.w4 = w.w4;
    r.gap1 = v1.margin;
    r.gap2 = v2.margin;
    r.moduli_ok = v1.moduli_ok && v2.moduli_ok;

    if (v1.verdict == Feasibility::Infeasible || v2.verdict == Feasibility::Infeasible)
        r.verdict = Feasibility::Infeasible;
    else if (v1.verdict == Feasibility::Boundary || v2.verdict == Feasibility::Boundary)
        r.verdict = Feasibility::Boundary;
    else
        r.verdict = Feasibility::Feasible;
    return r;
}

std::vector<InterpCondition> interpolation_conditions(const NodeTriple& n, const PoleConfig& p,
                                                      const BidiskPoint& z) {
    return {
        {cplx(0.0), {cplx(0.0), cplx(0.0)}},
        {n.zeta1, {p.eps1, cplx(0.0)}},
        {n.zeta2, {cplx(0.0), p.eps2}},
        {n.zeta0, {z.z1, z.z2}},
    };
}

AnalyticDiskMap assemble_map(const NodeTriple& n, const PoleConfig& p, const BidiskPoint& z) {
    const WValues w = w_values(n, p, z);
    const MoebiusComposition h1 = two_point_interpolant({n.zeta1, w.w1, n.zeta0, w.w2});
    const MoebiusComposition h2 = two_point_interpolant({n.zeta2, w.w4, n.zeta0, w.w3});

    const cplx zeta1 = n.zeta1, zeta2 = n.zeta2;
    AnalyticDiskMap m;
    m.coord1 = [zeta2, h1](cplx zeta) { return zeta * mobius_apply(zeta2, zeta) * h1(zeta); };
    m.coord2 = [zeta1, h2](cplx zeta) { return zeta * mobius_apply(zeta1, zeta) * h2(zeta); };
    m.overshoot = 0.0;
    return m;
}

std::optional<FeasibleRealization> inflate_to_feasible(const NodeTriple& n, const PoleConfig& p,
                                                       const BidiskPoint& z) {
    const double nmax =
        std::max({std::abs(n.zeta0), std::abs(n.zeta1), std::abs(n.zeta2)});
    if (!(nmax > 0.0) || !(nmax < 1.0)) return std::nullopt;

    auto inflated = [&](double s) {
        return NodeTriple{n.zeta0 * (1.0 + s), n.zeta1 * (1.0 + s), n.zeta2 * (1.0 + s)};
    };
    auto verdict_at = [&](double s) {
        const NodeTriple m = inflated(s);
        if (min_node_separation(m) < Tol::node_sep) return Feasibility::Infeasible;
        try {
            return node_feasible(m, p, z).verdict;
        } catch (const DegenerateNodes&) {
            return Feasibility::Infeasible;
        }
    };

    auto pack = [&](double s) {
        const NodeTriple m = inflated(s);
        return FeasibleRealization{m, normalized_cost(m), s, verdict_at(s)};
    };

    if (verdict_at(0.0) != Feasibility::Infeasible) return pack(0.0);

    // Scan inflation factors up to the node-escape limit, then bisect down to
    // a near-minimal s.  The bisection keeps the strict verdict on the upper
    // side so the returned point clears the feasibility tolerance band.
    const double s_escape = (1.0 - 1e-12) / nmax - 1.0;
    if (!(s_escape > 0.0)) return std::nullopt;

    constexpr int kScan = 64;
    double lo = 0.0, hi = -1.0;
    for (int k = 1; k <= kScan; ++k) {
        const double s = s_escape * std::pow(1e-7, 1.0 - static_cast<double>(k) / kScan);
        if (verdict_at(s) == Feasibility::Feasible) {
            hi = s;
            break;
        }
        lo = s;
    }
    if (hi < 0.0) return std::nullopt;

    for (int it = 0; it < 80 && (hi - lo) > 1e-15 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (verdict_at(mid) == Feasibility::Feasible)
            hi = mid;
        else
            lo = mid;
    }
    return pack(hi);
}

const char* estimate_method_name(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::Optimizer: return "optimizer";
        case EstimateMethod::AxisConstruction: return "axis_construction";
        case EstimateMethod::GenericConstruction: return "generic_construction";
        case EstimateMethod::ResonantConstruction: return "resonant_construction";
    }
    return "unknown";
}

}  // namespace lemlab
