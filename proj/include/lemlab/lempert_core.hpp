#pragma once

#include "lemlab/analytic_disk.hpp"
#include "lemlab/disk_geometry.hpp"
#include "lemlab/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lemlab {

// Normalized objective log|zeta0| + log|phi_zeta0(zeta1)| + log|phi_zeta0(zeta2)|.
double normalized_cost(const NodeTriple& n);

struct WValues {
    cplx w1, w2, w3, w4;
};

// Interpolation targets of the factored coordinates:
//   w1 = eps1 / (zeta1 phi_zeta2(zeta1)),  w2 = z1 / (zeta0 phi_zeta2(zeta0)),
//   w3 = z2 / (zeta0 phi_zeta1(zeta0)),    w4 = eps2 / (zeta2 phi_zeta1(zeta2)).
WValues w_values(const NodeTriple& n, const PoleConfig& p, const BidiskPoint& z);

struct FeasibilityReport {
    cplx w1, w2, w3, w4;
    double gap1;  // d_G(zeta1, zeta0) - d_G(w1, w2)
    double gap2;  // d_G(zeta2, zeta0) - d_G(w3, w4)
    bool moduli_ok;
    Feasibility verdict;
};

// Existence of a disk map through all four conditions, decided by the two
// two-point Schwarz-Pick subproblems (zeta1,w1; zeta0,w2) and (zeta2,w4; zeta0,w3).
FeasibilityReport node_feasible(const NodeTriple& n, const PoleConfig& p, const BidiskPoint& z);

// The four conditions 0 -> (0,0), zeta1 -> (eps1,0), zeta2 -> (0,eps2), zeta0 -> z.
std::vector<InterpCondition> interpolation_conditions(const NodeTriple& n, const PoleConfig& p,
                                                      const BidiskPoint& z);

// Witness map phi(zeta) = (zeta phi_zeta2(zeta) h1(zeta), zeta phi_zeta1(zeta) h2(zeta))
// with h1, h2 the constructive two-point interpolants.  Requires a Feasible or
// Boundary report.
AnalyticDiskMap assemble_map(const NodeTriple& n, const PoleConfig& p, const BidiskPoint& z);

// Smallest uniform node inflation (1+s) making the triple closed-feasible.
struct FeasibleRealization {
    NodeTriple nodes;
    double cost;
    double inflation;  // the s applied, 0 when already feasible
    Feasibility verdict;
};

std::optional<FeasibleRealization> inflate_to_feasible(const NodeTriple& n, const PoleConfig& p,
                                                       const BidiskPoint& z);

struct OptimizerOptions {
    std::uint64_t seed = 1;
    int starts = 64;
    int evals_per_start = 2000;
    double penalty_weight = 1e3;
    double collision_tol = 1e-8;
    double simplex_step = 0.35;
    int threads = 0;  // 0 = hardware concurrency
};

enum class EstimateMethod { Optimizer, AxisConstruction, GenericConstruction, ResonantConstruction };

struct LempertEstimate {
    double value = 0.0;
    NodeTriple nodes{};
    EstimateMethod method = EstimateMethod::Optimizer;
    double residual = 0.0;
    double boundary_sup = 0.0;
    int feasible_starts = 0;
    Feasibility verdict = Feasibility::Infeasible;
};

// Multi-start simplex search for the least normalized cost over closed-feasible
// node triples.  Upper bound for the Lempert function at z; deterministic for a
// fixed seed, independent of the thread count.
LempertEstimate lempert_upper_via_nodes(const BidiskPoint& z, const PoleConfig& p,
                                        const OptimizerOptions& opts);

const char* estimate_method_name(EstimateMethod m);

}  // namespace lemlab
