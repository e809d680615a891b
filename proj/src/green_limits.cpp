#include "lemlab/green_limits.hpp"

#include <algorithm>
#include <cmath>

namespace lemlab {

double g1(const BidiskPoint& z) {
    return std::max(2.0 * std::log(std::abs(z.z1)), std::log(std::abs(z.z2)));
}

double g2(const BidiskPoint& z) {
    return std::max(std::log(std::abs(z.z1)), 2.0 * std::log(std::abs(z.z2)));
}

double g3(const BidiskPoint& z) {
    return 2.0 * std::log(z.norm());
}

SandwichReport sandwich_report(const BidiskPoint& z) {
    if (z.z1 == cplx(0.0) && z.z2 == cplx(0.0))
        throw DomainError("sandwich_report: z must differ from the origin");

    const double l1 = std::log(std::abs(z.z1));
    const double l2 = std::log(std::abs(z.z2));

    SandwichReport r{};
    r.g1 = std::max(2.0 * l1, l2);
    r.g2 = std::max(l1, 2.0 * l2);
    r.g3 = std::max(2.0 * l1, 2.0 * l2);
    r.min12 = std::min(r.g1, r.g2);

    if (l2 <= 2.0 * l1)
        r.region = GreenRegion::Z2Dominated;
    else if (l1 <= 2.0 * l2)
        r.region = GreenRegion::Z1Dominated;
    else
        r.region = GreenRegion::Intermediate;
    return r;
}

}  // namespace lemlab
