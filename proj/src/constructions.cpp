#include "lemlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lemlab {

namespace {

constexpr double kOvershootCap = 1.0;

double measured_overshoot(const AnalyticDiskMap& m) {
    return std::max(0.0, boundary_sup_refined(m) - 1.0);
}

AnalyticDiskMap subtract(const AnalyticDiskMap& base, const CorrectionTerm& corr) {
    AnalyticDiskMap out;
    auto b1 = base.coord1, b2 = base.coord2;
    auto c1 = corr.corr1, c2 = corr.corr2;
    out.coord1 = [b1, c1](cplx zeta) { return b1(zeta) - c1(zeta); };
    out.coord2 = [b2, c2](cplx zeta) { return b2(zeta) - c2(zeta); };
    return out;
}

struct SwappedProblem {
    BidiskPoint z;
    PoleConfig p;
};

SwappedProblem swap_problem(const BidiskPoint& z, const PoleConfig& p) {
    return SwappedProblem{BidiskPoint(z.z2, z.z1), PoleConfig(p.eps2, p.eps1)};
}

AnalyticDiskMap swap_map(const AnalyticDiskMap& m) {
    AnalyticDiskMap out;
    out.coord1 = m.coord2;
    out.coord2 = m.coord1;
    out.overshoot = m.overshoot;
    return out;
}

NodeTriple swap_nodes(const NodeTriple& n) { return NodeTriple{n.zeta0, n.zeta2, n.zeta1}; }

}  // namespace

CorrectionTerm lagrange_correct(const AnalyticDiskMap& base,
                                const std::vector<InterpCondition>& conditions) {
    std::vector<cplx> nodes;        // nonzero condition nodes
    std::vector<std::array<cplx, 2>> node_errors;
    CorrectionTerm out;
    out.errors.reserve(conditions.size());

    for (const InterpCondition& c : conditions) {
        const auto v = base(c.node);
        const std::array<cplx, 2> err{v[0] - c.target[0], v[1] - c.target[1]};
        out.errors.push_back(err);
        if (c.node == cplx(0.0)) {
            // The origin condition must already be met; this basis cannot fix it.
            if (std::max(std::abs(err[0]), std::abs(err[1])) > Tol::interp)
                throw DomainError("lagrange_correct: base map violates the origin condition");
            continue;
        }
        if (std::abs(c.node) < Tol::node_sep)
            throw NodesTooClose("lagrange_correct: condition node too close to the origin");
        nodes.push_back(c.node);
        node_errors.push_back(err);
    }
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (std::abs(nodes[i] - nodes[j]) < Tol::node_sep)
                throw NodesTooClose("lagrange_correct: condition nodes too close");

    // Coefficients A_j = E_j / (c_j * prod_{k != j} phi_{c_k}(c_j)); the term
    // A_j * zeta * prod_{k != j} phi_{c_k}(zeta) equals E_j at c_j and vanishes
    // at 0 and at every other node.
    const size_t m = nodes.size();
    std::vector<std::array<cplx, 2>> coeff(m);
    for (size_t j = 0; j < m; ++j) {
        cplx denom = nodes[j];
        for (size_t k = 0; k < m; ++k)
            if (k != j) denom *= mobius_apply(nodes[k], nodes[j]);
        coeff[j] = {node_errors[j][0] / denom, node_errors[j][1] / denom};
    }

    auto eval = [nodes, coeff, m](cplx zeta, int coord) {
        cplx acc = 0.0;
        for (size_t j = 0; j < m; ++j) {
            cplx term = (coord == 0 ? coeff[j][0] : coeff[j][1]) * zeta;
            for (size_t k = 0; k < m; ++k)
                if (k != j) term *= mobius_apply(nodes[k], zeta);
            acc += term;
        }
        return acc;
    };
    out.corr1 = [eval](cplx zeta) { return eval(zeta, 0); };
    out.corr2 = [eval](cplx zeta) { return eval(zeta, 1); };

    AnalyticDiskMap as_map;
    as_map.coord1 = out.corr1;
    as_map.coord2 = out.corr2;
    out.sup_norm = boundary_sup_refined(as_map);
    return out;
}

double axis_zeta2_schedule(const BidiskPoint& z, const PoleConfig& p) {
    const double zmod = std::max(std::abs(z.z1), std::abs(z.z2));
    const double emod = std::max(std::abs(p.eps1), std::abs(p.eps2));
    return 1.0 - std::min(emod * zmod, 1e-4);
}

ConstructionResult build_axis_case(const BidiskPoint& z, const PoleConfig& p,
                                   UnitDiskPoint zeta2) {
    if (z.z2 != cplx(0.0))
        throw AssumptionViolated("build_axis_case: requires z2 = 0");
    const cplx z1 = z.z1, e1 = p.eps1, e2 = p.eps2;
    if (std::abs(z1) > 0.5 || std::abs(e1) > 0.5 * std::abs(z1))
        throw AssumptionViolated("build_axis_case: requires |z1| <= 1/2 and |eps1| <= |z1|/2");
    if (std::abs(z1 - e1) < Tol::node_sep)
        throw AssumptionViolated("build_axis_case: z coincides with the off-origin pole");

    const cplx z2node = zeta2.value();
    const NodeTriple nodes{z1, e1, z2node};
    if (min_node_separation(nodes) < Tol::node_sep)
        throw AssumptionViolated("build_axis_case: degenerate node configuration");

    // Base map: exact in the first coordinate except at zeta1, zeta0; second
    // coordinate scaled to pass through eps2 at a boundary-adjacent zeta2.
    const cplx scale2 = e2 / (mobius_apply(e1, cplx(1.0)) * mobius_apply(z1, cplx(1.0)));
    AnalyticDiskMap base;
    base.coord1 = [z2node](cplx zeta) { return zeta * mobius_apply(z2node, zeta); };
    base.coord2 = [e1, z1, scale2](cplx zeta) {
        return zeta * mobius_apply(e1, zeta) * mobius_apply(z1, zeta) * scale2;
    };

    const auto conditions = interpolation_conditions(nodes, p, z);
    const CorrectionTerm corr = lagrange_correct(base, conditions);
    AnalyticDiskMap map = subtract(base, corr);
    map.overshoot = measured_overshoot(map);
    if (map.overshoot > kOvershootCap)
        throw OvershootTooLarge("build_axis_case: correction overshoots the bidisk");

    const MapCheck check = verify_map(map, conditions, 4096);
    if (check.residual > Tol::interp)
        throw OvershootTooLarge("build_axis_case: corrected map misses a condition");
    if (check.boundary_sup > 1.0 + map.overshoot + Tol::img)
        throw OvershootTooLarge("build_axis_case: boundary exceeds the declared overshoot");

    return ConstructionResult{map, nodes, normalized_cost(nodes), map.overshoot};
}

ConstructionResult build_axis_case(const BidiskPoint& z, const PoleConfig& p) {
    if (z.z2 == cplx(0.0) && z.z1 != cplx(0.0)) {
        return build_axis_case(z, p, UnitDiskPoint(axis_zeta2_schedule(z, p)));
    }
    if (z.z1 == cplx(0.0) && z.z2 != cplx(0.0)) {
        const SwappedProblem s = swap_problem(z, p);
        ConstructionResult r =
            build_axis_case(s.z, s.p, UnitDiskPoint(axis_zeta2_schedule(s.z, s.p)));
        return ConstructionResult{swap_map(r.map), swap_nodes(r.nodes), r.cost, r.gamma};
    }
    throw AssumptionViolated("build_axis_case: one coordinate of z must vanish");
}

NodeTriple generic_branch_nodes(const GenericCaseParams& params) {
    const cplx zeta1 = params.nu * params.eps1_root;
    const cplx zeta2 = -(params.sigma / params.mu) * zeta1;
    return NodeTriple{params.zeta0, zeta1, zeta2};
}

std::vector<GenericCaseParams> generic_case_variants(const BidiskPoint& z, const PoleConfig& p,
                                                     double c0) {
    if (z.z1 == cplx(0.0) || z.z2 == cplx(0.0))
        throw ArgCondViolated("generic case: needs both coordinates of z nonzero");

    const bool swapped = std::abs(z.z2) > std::abs(z.z1);
    const cplx z1 = swapped ? z.z2 : z.z1;
    const cplx z2 = swapped ? z.z1 : z.z2;
    const cplx e1 = swapped ? p.eps2 : p.eps1;
    const cplx e2 = swapped ? p.eps1 : p.eps2;

    const cplx mu = z2 / z1;
    const cplx sigma = e2 / e1;
    const cplx one_plus = 1.0 + sigma / mu;
    const double argcond =
        std::abs(z1 / std::abs(z1) * (std::abs(z2) / z2) + e1 / std::abs(e1) * (std::abs(e2) / e2));
    if (argcond < c0 || std::abs(one_plus) < c0)
        throw ArgCondViolated("generic case: direction condition fails at the requested c0");

    const cplx nu = std::sqrt(1.0 / one_plus);
    const cplx zeta0 = std::sqrt(z1);
    const cplx eps1_root = std::sqrt(e1);

    std::vector<GenericCaseParams> out;
    out.reserve(8);
    for (int flags = 0; flags < 8; ++flags) {
        GenericCaseParams v;
        v.mu = mu;
        v.sigma = sigma;
        v.zeta0 = (flags & 1) ? -zeta0 : zeta0;
        v.eps1_root = (flags & 2) ? -eps1_root : eps1_root;
        v.nu = (flags & 4) ? -nu : nu;
        v.branch_flags = flags;
        v.swapped = swapped;
        out.push_back(v);
    }
    return out;
}

ConstructionResult build_generic_case(const BidiskPoint& z, const PoleConfig& p, double c0) {
    const auto variants = generic_case_variants(z, p, c0);
    const bool swapped = variants.front().swapped;
    const SwappedProblem work =
        swapped ? swap_problem(z, p) : SwappedProblem{z, p};

    ConstructionResult best{};
    double best_cost = std::numeric_limits<double>::infinity();
    bool found = false;

    for (const GenericCaseParams& v : variants) {
        const NodeTriple nodes = generic_branch_nodes(v);
        if (!nodes_in_disk(nodes) || min_node_separation(nodes) < Tol::node_sep) continue;

        const cplx mu = v.mu, zeta1 = nodes.zeta1, zeta2 = nodes.zeta2;
        AnalyticDiskMap base;
        base.coord1 = [zeta2](cplx zeta) {
            return zeta * (zeta - zeta2) / (1.0 - zeta * std::conj(zeta2));
        };
        base.coord2 = [mu, zeta1](cplx zeta) {
            return mu * zeta * (zeta - zeta1) / (1.0 - zeta * std::conj(zeta1));
        };

        const auto conditions = interpolation_conditions(nodes, work.p, work.z);
        CorrectionTerm corr;
        try {
            corr = lagrange_correct(base, conditions);
        } catch (const NodesTooClose&) {
            continue;
        }
        AnalyticDiskMap map = subtract(base, corr);
        map.overshoot = measured_overshoot(map);
        if (map.overshoot > kOvershootCap) continue;
        if (verify_map(map, conditions, 4096).residual > Tol::interp) continue;

        const double cost = normalized_cost(nodes);
        if (cost < best_cost) {
            best_cost = cost;
            best = ConstructionResult{map, nodes, cost, map.overshoot};
            found = true;
        }
    }
    if (!found)
        throw OvershootTooLarge("build_generic_case: no branch yields a usable map");

    if (swapped) {
        best.map = swap_map(best.map);
        best.nodes = swap_nodes(best.nodes);
    }
    return best;
}

double resonant_cost_slack() { return std::log(6.0 * kResonantC1 * kResonantC1); }

ResonantCaseResult build_resonant_case(const BidiskPoint& z, const PoleConfig& p) {
    if (z.z1 == cplx(0.0) || z.z2 == cplx(0.0))
        throw AssumptionViolated("build_resonant_case: needs both coordinates of z nonzero");

    const bool swapped = std::abs(z.z2) > std::abs(z.z1);
    const SwappedProblem work = swapped ? swap_problem(z, p) : SwappedProblem{z, p};
    const cplx z1 = work.z.z1;
    const cplx mu = work.z.z2 / z1;
    const cplx gamma = mu + work.p.eps2 / work.p.eps1;  // eps2 = -(mu - gamma) eps1

    ResonantCaseParams params;
    params.xi = kResonantC1 * z1;
    params.gamma_drift = gamma;
    params.swapped = swapped;

    if (std::abs(params.xi) > 0.25)
        throw AssumptionViolated("build_resonant_case: |xi| = C1 |z1| exceeds 1/4");
    if (std::abs(gamma) > 1.0)
        throw AssumptionViolated("build_resonant_case: pole direction too far from resonant");

    const cplx zeta0 = 0.5;
    const cplx zeta1 = zeta0 + params.xi;
    params.xi_prime = (work.p.eps1 / z1) * (zeta0 / zeta1) *
                      ((1.0 - std::norm(zeta1)) / (1.0 - zeta0 * std::conj(zeta1))) * params.xi;
    const cplx zeta2 = zeta1 + params.xi_prime;

    NodeTriple nodes{zeta0, zeta1, zeta2};
    if (!nodes_in_disk(nodes) || min_node_separation(nodes) < Tol::node_sep)
        throw AssumptionViolated("build_resonant_case: node configuration degenerates");

    if (swapped) nodes = swap_nodes(nodes);
    const FeasibilityReport report = node_feasible(nodes, p, z);
    if (report.verdict == Feasibility::Infeasible) {
        std::ostringstream msg;
        msg << "build_resonant_case: infeasible at this eps (gap1=" << report.gap1
            << ", gap2=" << report.gap2 << ", |w|max="
            << std::max({std::abs(report.w1), std::abs(report.w2), std::abs(report.w3),
                         std::abs(report.w4)})
            << ")";
        throw InfeasibleError(msg.str());
    }
    return ResonantCaseResult{nodes, report, normalized_cost(nodes), params};
}

std::pair<AnalyticDiskMap, NodeTriple> rescale_to_bidisk(const AnalyticDiskMap& m,
                                                         const NodeTriple& n) {
    const double gamma = m.overshoot;
    const double scale = 1.0 + gamma;
    if (!(scale * std::abs(n.zeta0) < 1.0 && scale * std::abs(n.zeta1) < 1.0 &&
          scale * std::abs(n.zeta2) < 1.0))
        throw NodeEscapes("rescale_to_bidisk: (1+gamma) pushes a node out of the disk");

    AnalyticDiskMap out;
    auto c1 = m.coord1, c2 = m.coord2;
    out.coord1 = [c1, scale](cplx zeta) { return c1(zeta / scale); };
    out.coord2 = [c2, scale](cplx zeta) { return c2(zeta / scale); };
    out.overshoot = 0.0;
    return {out, NodeTriple{n.zeta0 * scale, n.zeta1 * scale, n.zeta2 * scale}};
}

std::array<cplx, 2> BidiskAutomorphism::operator()(const std::array<cplx, 2>& w) const {
    return {mobius_apply(z1, w[0]), mobius_apply(z2, w[1])};
}

BidiskAutomorphism bidisk_automorphism(const BidiskPoint& z) {
    return BidiskAutomorphism{z.z1, z.z2};
}

}  // namespace lemlab
