#pragma once

#include "lemlab/types.hpp"

#include <vector>

namespace lemlab {

// phi_a(zeta) = (a - zeta) / (1 - zeta * conj(a)), the involutive disk
// automorphism exchanging a and 0.  Defined for |a| < 1, |zeta| <= 1.
cplx mobius_apply(cplx a, cplx zeta);

// Pseudohyperbolic distance d_G(a, b) = |phi_a(b)| = |phi_b(a)|.
double pseudo_distance(cplx a, cplx b);

// minimal pairwise pseudohyperbolic separation of the triple, the reserved
// origin counted as a fourth node
double min_node_separation(const NodeTriple& n);

// Euclidean disk {b : d_G(a, b) <= delta}.
struct PickDisk {
    cplx center;
    double radius;
};

PickDisk pick_disk(UnitDiskPoint a, double delta);

// Bound on |arg(a/b)| for d_G(a,b) = delta < |a|, delta <= 1/2, arguments
// reduced to [-pi/2, pi/2]:  arcsin(delta (1-|a|^2) / (|a| (1-delta^2))).
double arg_separation_bound(UnitDiskPoint a, double delta);
// The weaker closed-form majorant 3 delta / |a|.
double arg_separation_majorant(UnitDiskPoint a, double delta);

// w* = w / |w|.
cplx circle_projection(cplx w);

enum class Feasibility { Feasible, Boundary, Infeasible };

// Interpolation data h(node_a) = target_alpha, h(node_b) = target_beta for a
// holomorphic h : D -> D.  Targets may lie outside the open disk; such
// problems are infeasible.
struct TwoPointProblem {
    cplx node_a, target_alpha;
    cplx node_b, target_beta;
};

struct TwoPointVerdict {
    Feasibility verdict;
    double margin;    // d_G(a,b) - d_G(alpha,beta); deficit = -margin when infeasible
    bool moduli_ok;   // both targets strictly inside the disk
};

TwoPointVerdict two_point_feasible(const TwoPointProblem& p);

// Composition of disk automorphisms and |c| <= 1 scalings; maps the closed
// disk into itself, evaluable on |zeta| <= 1.
struct MoebiusComposition {
    struct Atom {
        enum class Kind { Automorphism, Scale, Identity };
        Kind kind = Kind::Identity;
        cplx param{0.0, 0.0};
    };
    std::vector<Atom> atoms;  // applied first-to-last

    cplx operator()(cplx zeta) const;
};

// Constructive witness h = phi_alpha ∘ (c · phi_a), c = phi_alpha(beta) / phi_a(b).
// Requires two_point_feasible(p) to be Feasible or Boundary.
MoebiusComposition two_point_interpolant(const TwoPointProblem& p);

}  // namespace lemlab
