#pragma once

#include "lemlab/analytic_disk.hpp"
#include "lemlab/lempert_core.hpp"
#include "lemlab/types.hpp"

#include <array>
#include <functional>
#include <vector>

namespace lemlab {

struct ConstructionResult {
    AnalyticDiskMap map;  // meets all four conditions to Tol::interp
    NodeTriple nodes;
    double cost;   // normalized objective at the nodes
    double gamma;  // measured boundary overshoot of the map
};

// Interpolation errors of a base map at given conditions plus the correcting
// term that removes them.
struct CorrectionTerm {
    std::vector<std::array<cplx, 2>> errors;
    std::function<cplx(cplx)> corr1, corr2;
    double sup_norm;  // boundary sup of the correction, feeds the overshoot
};

// Lagrange-type correction: per coordinate sum of E_j * L_j with basis L_j
// vanishing at 0 and the other condition nodes and L_j(node_j) = 1.  Blaschke
// factors keep the basis bounded on the closed disk.
CorrectionTerm lagrange_correct(const AnalyticDiskMap& base,
                                const std::vector<InterpCondition>& conditions);

// Axis case z = (z1, 0): nodes zeta1 = eps1, zeta0 = z1 and zeta2 near 1.
// Requires |z1| <= 1/2 and |eps1| <= |z1| / 2.
ConstructionResult build_axis_case(const BidiskPoint& z, const PoleConfig& p,
                                   UnitDiskPoint zeta2);
// Same with the default schedule zeta2 = 1 - min(|eps| |z1|, 1e-4); handles the
// z1 = 0 case by coordinate swap.
ConstructionResult build_axis_case(const BidiskPoint& z, const PoleConfig& p);

double axis_zeta2_schedule(const BidiskPoint& z, const PoleConfig& p);

struct GenericCaseParams {
    cplx mu;         // z2 / z1 after the |mu| <= 1 normalization
    cplx sigma;      // eps2 / eps1
    cplx nu;         // nu^2 = (1 + sigma/mu)^{-1}
    cplx zeta0;      // zeta0^2 = z1
    cplx eps1_root;  // eps1_root^2 = eps1
    int branch_flags = 0;
    bool swapped = false;
};

// Node choice zeta1 = nu * eps1_root, zeta2 = -(sigma/mu) zeta1 for one branch
// assignment (bits: zeta0 sign, eps1_root sign, nu sign).
NodeTriple generic_branch_nodes(const GenericCaseParams& params);

std::vector<GenericCaseParams> generic_case_variants(const BidiskPoint& z, const PoleConfig& p,
                                                     double c0);

// Generic case: base map (zeta (zeta - zeta2)/(1 - zeta conj zeta2),
// mu zeta (zeta - zeta1)/(1 - zeta conj zeta1)) plus Lagrange correction; all
// eight root branches tried, minimum-cost valid variant returned.
ConstructionResult build_generic_case(const BidiskPoint& z, const PoleConfig& p, double c0);

inline constexpr double kResonantC1 = 40.0;

// Explicit O(1) slack of the resonant cost bound 2 log|z1| + C.
double resonant_cost_slack();

struct ResonantCaseParams {
    double C1 = kResonantC1;
    cplx xi;           // C1 * z1
    cplx xi_prime;     // (eps1/z1)(zeta0/zeta1)((1-|zeta1|^2)/(1-zeta0 conj zeta1)) xi
    cplx gamma_drift;  // gamma with eps2 = -(mu - gamma) eps1
    bool swapped = false;
};

struct ResonantCaseResult {
    NodeTriple nodes;  // zeta0 = 1/2, zeta1 = zeta0 + xi, zeta2 = zeta1 + xi'
    FeasibilityReport report;
    double cost;
    ResonantCaseParams params;
};

// Resonant direction eps2 ~ -mu eps1: explicit feasible nodes, no map; the
// witness is assembled by assemble_map.  Requires |xi| <= 1/4 and |gamma| <= 1.
ResonantCaseResult build_resonant_case(const BidiskPoint& z, const PoleConfig& p);

// psi(zeta) = m(zeta / (1 + gamma)) with nodes scaled by (1 + gamma); maps the
// disk into the closed bidisk when the declared overshoot is honest.
std::pair<AnalyticDiskMap, NodeTriple> rescale_to_bidisk(const AnalyticDiskMap& m,
                                                         const NodeTriple& n);

// Coordinatewise involution w -> (phi_z1(w1), phi_z2(w2)) exchanging z and (0,0).
struct BidiskAutomorphism {
    cplx z1, z2;
    std::array<cplx, 2> operator()(const std::array<cplx, 2>& w) const;
};

BidiskAutomorphism bidisk_automorphism(const BidiskPoint& z);

}  // namespace lemlab
