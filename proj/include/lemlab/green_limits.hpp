#pragma once

#include "lemlab/types.hpp"

namespace lemlab {

// Limit Green functions of the comparison pole systems; values in [-inf, 0).
double g1(const BidiskPoint& z);  // max(2 log|z1|, log|z2|)
double g2(const BidiskPoint& z);  // max(log|z1|, 2 log|z2|)
double g3(const BidiskPoint& z);  // 2 log max(|z1|, |z2|)

enum class GreenRegion {
    Z2Dominated,   // log|z2| <= 2 log|z1|: g3 = g1 = min(g1,g2) = 2 log|z1|
    Z1Dominated,   // symmetric
    Intermediate,
};

struct SandwichReport {
    double g1, g2, g3;
    double min12;
    GreenRegion region;
};

// Evaluates the sandwich g3 <= min(g1, g2) and classifies the region.
// Region comparisons are made in log coordinates so the dominated-region
// identities hold exactly in floating point.
SandwichReport sandwich_report(const BidiskPoint& z);

}  // namespace lemlab
