#pragma once

#include "lemlab/lempert_core.hpp"
#include "lemlab/types.hpp"

#include <string>
#include <vector>

namespace lemlab {

// Explicit constants for the lower-bound certificate.  CH_prime is chosen so
// that every threshold of the contradiction argument is met; C = log(CH_prime).
// c1_audit and c2_audit stand in for the unnamed absolute constants and are
// validated empirically by the test suite.
struct LowerBoundConstants {
    double c0;
    double CH_prime;
    double C;
    double c1_audit;
    double c2_audit;
};

LowerBoundConstants lower_bound_constant(double c0);

// |(z1/z2)* + (eps1/eps2)*| in [0, 2]; zero exactly in the resonant direction.
double arg_condition(const BidiskPoint& z, const PoleConfig& p);

struct ChainStep {
    std::string name;
    double lhs, rhs;
    bool holds;
    bool smallness_ok;  // whether the operative |eps| <= 1e-3 |z|^3 clause held
};

struct ChainReport {
    double cost, bar;       // normalized cost and (3/2) log|z| - C
    bool hypothesis_holds;  // cost <= bar
    bool premises_hold;     // |w_j| < 1 and both pseudohyperbolic gaps positive
    bool smallness_ok;
    WValues w;
    std::vector<ChainStep> steps;
    bool contradiction_witness;  // hypothesis + premises + every step: must never happen
};

// Evaluates the inequality chain of the lower-bound argument at concrete data.
// Requires c0 <= |z1/z2| <= 1/c0 and arg_condition >= c0 (HypothesisViolated
// otherwise).
ChainReport chain_certificate(const BidiskPoint& z, const PoleConfig& p, const NodeTriple& n,
                              double c0, const LowerBoundConstants& consts);

}  // namespace lemlab
