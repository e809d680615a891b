#include "lemlab/disk_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lemlab {

cplx mobius_apply(cplx a, cplx zeta) {
    return (a - zeta) / (1.0 - zeta * std::conj(a));
}

double pseudo_distance(cplx a, cplx b) {
    return std::abs(mobius_apply(a, b));
}

double min_node_separation(const NodeTriple& n) {
    double s = std::abs(n.zeta0);  // d_G(zeta, 0) = |zeta|
    s = std::min(s, std::abs(n.zeta1));
    s = std::min(s, std::abs(n.zeta2));
    s = std::min(s, pseudo_distance(n.zeta0, n.zeta1));
    s = std::min(s, pseudo_distance(n.zeta0, n.zeta2));
    s = std::min(s, pseudo_distance(n.zeta1, n.zeta2));
    return s;
}

PickDisk pick_disk(UnitDiskPoint a, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("pick_disk: delta must lie in (0,1)");
    const cplx av = a.value();
    const double a2 = std::norm(av);
    const double d2 = delta * delta;
    const double denom = 1.0 - a2 * d2;
    return PickDisk{av * (1.0 - d2) / denom, delta * (1.0 - a2) / denom};
}

double arg_separation_bound(UnitDiskPoint a, double delta) {
    const double am = std::abs(a.value());
    if (!(delta > 0.0) || delta >= am || delta > 0.5)
        throw DomainError("arg_separation_bound: need 0 < delta < |a|, delta <= 1/2");
    const double x = delta * (1.0 - am * am) / (am * (1.0 - delta * delta));
    return std::asin(std::clamp(x, 0.0, 1.0));
}

double arg_separation_majorant(UnitDiskPoint a, double delta) {
    const double am = std::abs(a.value());
    if (!(delta > 0.0) || delta >= am || delta > 0.5)
        throw DomainError("arg_separation_majorant: need 0 < delta < |a|, delta <= 1/2");
    return 3.0 * delta / am;
}

cplx circle_projection(cplx w) {
    const double m = std::abs(w);
    if (m == 0.0) throw ZeroInput("circle_projection: w must be nonzero");
    return w / m;
}

TwoPointVerdict two_point_feasible(const TwoPointProblem& p) {
    if (p.node_a == p.node_b)
        throw DomainError("two_point_feasible: interpolation nodes coincide");

    const bool moduli_ok = std::abs(p.target_alpha) < 1.0 && std::abs(p.target_beta) < 1.0;
    const double dab = pseudo_distance(p.node_a, p.node_b);

    if (!moduli_ok) {
        // Targets on or outside the circle admit no interior interpolant.
        double dt = 1.0 + std::max(std::abs(p.target_alpha), std::abs(p.target_beta));
        const cplx den = 1.0 - p.target_beta * std::conj(p.target_alpha);
        if (std::abs(den) > 1e-30)
            dt = std::abs((p.target_alpha - p.target_beta) / den);
        return TwoPointVerdict{Feasibility::Infeasible, dab - dt, false};
    }

    const double margin = dab - pseudo_distance(p.target_alpha, p.target_beta);
    Feasibility v = Feasibility::Infeasible;
    if (margin > Tol::feas)
        v = Feasibility::Feasible;
    else if (margin >= -Tol::feas)
        v = Feasibility::Boundary;
    return TwoPointVerdict{v, margin, true};
}

cplx MoebiusComposition::operator()(cplx zeta) const {
    cplx v = zeta;
    for (const Atom& a : atoms) {
        switch (a.kind) {
            case Atom::Kind::Automorphism: v = mobius_apply(a.param, v); break;
            case Atom::Kind::Scale: v = a.param * v; break;
            case Atom::Kind::Identity: break;
        }
    }
    return v;
}

MoebiusComposition two_point_interpolant(const TwoPointProblem& p) {
    const TwoPointVerdict tv = two_point_feasible(p);
    if (tv.verdict == Feasibility::Infeasible)
        throw InfeasibleError("two_point_interpolant: problem is infeasible");

    const cplx denom = mobius_apply(p.node_a, p.node_b);
    if (std::abs(denom) < Tol::node_sep)
        throw DegenerateNodes("two_point_interpolant: nodes too close");

    cplx c = mobius_apply(p.target_alpha, p.target_beta) / denom;
    if (std::abs(c) > 1.0) {
        // Boundary verdicts can land a hair outside; pull back to a rotation.
        if (std::abs(c) > 1.0 + 1e-6)
            throw InfeasibleError("two_point_interpolant: scaling exceeds 1");
        c /= std::abs(c);
    }

    MoebiusComposition h;
    h.atoms = {
        {MoebiusComposition::Atom::Kind::Automorphism, p.node_a},
        {MoebiusComposition::Atom::Kind::Scale, c},
        {MoebiusComposition::Atom::Kind::Automorphism, p.target_alpha},
    };
    return h;
}

}  // namespace lemlab
