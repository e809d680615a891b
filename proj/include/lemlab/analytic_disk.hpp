#pragma once

#include "lemlab/types.hpp"

#include <array>
#include <functional>
#include <vector>

namespace lemlab {

// Holomorphic map D -> C^2 built from Blaschke-type factors and polynomial
// corrections; holomorphic on a neighborhood of the closed disk.  `overshoot`
// is the declared gamma: the image is promised inside D(0, 1+gamma)^2.
struct AnalyticDiskMap {
    std::function<cplx(cplx)> coord1, coord2;
    double overshoot = 0.0;

    std::array<cplx, 2> operator()(cplx zeta) const { return {coord1(zeta), coord2(zeta)}; }
};

// One interpolation requirement map(node) = target.
struct InterpCondition {
    cplx node;
    std::array<cplx, 2> target;
};

struct MapCheck {
    double residual;      // max over conditions of the max-coordinate error
    double boundary_sup;  // max over grid boundary samples of the max-coordinate modulus
};

// Checks interpolation conditions and samples the boundary on grid_n roots of
// unity; by the maximum principle the boundary sup bounds the interior sup up
// to grid resolution.  Requires grid_n >= 256.
MapCheck verify_map(const AnalyticDiskMap& m, const std::vector<InterpCondition>& conditions,
                    int grid_n);

// Boundary sup with local refinement around grid maxima plus a relative
// safety margin, suitable as a declared overshoot.
double boundary_sup_refined(const AnalyticDiskMap& m, int grid_n = 4096);

}  // namespace lemlab
