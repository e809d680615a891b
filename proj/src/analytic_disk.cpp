#include "lemlab/analytic_disk.hpp"

#include <algorithm>
#include <cmath>

namespace lemlab {

namespace {

double coord_max(const AnalyticDiskMap& m, cplx zeta) {
    return std::max(std::abs(m.coord1(zeta)), std::abs(m.coord2(zeta)));
}

}  // namespace

MapCheck verify_map(const AnalyticDiskMap& m, const std::vector<InterpCondition>& conditions,
                    int grid_n) {
    if (grid_n < 256)
        throw DomainError("verify_map: grid_n must be >= 256");

    double residual = 0.0;
    for (const InterpCondition& c : conditions) {
        const auto v = m(c.node);
        residual = std::max(residual, std::abs(v[0] - c.target[0]));
        residual = std::max(residual, std::abs(v[1] - c.target[1]));
    }

    double sup = 0.0;
    const double step = 2.0 * M_PI / grid_n;
    for (int k = 0; k < grid_n; ++k)
        sup = std::max(sup, coord_max(m, std::polar(1.0, k * step)));

    return MapCheck{residual, sup};
}

double boundary_sup_refined(const AnalyticDiskMap& m, int grid_n) {
    const double step = 2.0 * M_PI / grid_n;
    std::vector<double> v(static_cast<size_t>(grid_n));
    for (int k = 0; k < grid_n; ++k)
        v[static_cast<size_t>(k)] = coord_max(m, std::polar(1.0, k * step));

    double best = 0.0;
    auto at = [&](int k) { return v[static_cast<size_t>((k % grid_n + grid_n) % grid_n)]; };
    for (int k = 0; k < grid_n; ++k) {
        best = std::max(best, at(k));
        if (at(k) < at(k - 1) || at(k) < at(k + 1)) continue;
        // Local maximum: golden-section refine inside the two adjacent cells.
        double lo = (k - 1) * step, hi = (k + 1) * step;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
        double fa = coord_max(m, std::polar(1.0, a));
        double fb = coord_max(m, std::polar(1.0, b));
        for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
            if (fa < fb) {
                lo = a;
                a = b;
                fa = fb;
                b = lo + gr * (hi - lo);
                fb = coord_max(m, std::polar(1.0, b));
            } else {
                hi = b;
                b = a;
                fb = fa;
                a = hi - gr * (hi - lo);
                fa = coord_max(m, std::polar(1.0, a));
            }
            best = std::max({best, fa, fb});
        }
    }
    return best * (1.0 + 1e-13);
}

}  // namespace lemlab
