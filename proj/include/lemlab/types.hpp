#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace lemlab {

using cplx = std::complex<double>;

// Shared numeric tolerances.
struct Tol {
    static constexpr double feas = 1e-10;      // feasibility verdict band
    static constexpr double interp = 1e-9;     // interpolation residual
    static constexpr double img = 1e-10;       // boundary overshoot slack
    static constexpr double node_sep = 1e-8;   // minimal pseudohyperbolic node separation
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct ZeroInput : std::domain_error {
    using std::domain_error::domain_error;
};
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateNodes : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoFeasiblePoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AssumptionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OvershootTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ArgCondViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NodesTooClose : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NodeEscapes : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HypothesisViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Point of the open unit disk, |value| < 1 enforced on construction.
class UnitDiskPoint {
public:
    explicit UnitDiskPoint(cplx v) : v_(v) {
        if (!(std::abs(v) < 1.0))
            throw DomainError("UnitDiskPoint: |value| must be < 1");
    }
    cplx value() const { return v_; }
    operator cplx() const { return v_; }

private:
    cplx v_;
};

// Closed-disk relaxation, |value| <= 1; used for boundary sampling only.
class ClosedDiskPoint {
public:
    explicit ClosedDiskPoint(cplx v) : v_(v) {
        if (!(std::abs(v) <= 1.0))
            throw DomainError("ClosedDiskPoint: |value| must be <= 1");
    }
    cplx value() const { return v_; }
    operator cplx() const { return v_; }

private:
    cplx v_;
};

// Point of the open bidisk with max-norm.
struct BidiskPoint {
    cplx z1, z2;

    BidiskPoint(cplx a, cplx b) : z1(a), z2(b) {
        if (!(norm() < 1.0))
            throw DomainError("BidiskPoint: max(|z1|,|z2|) must be < 1");
    }
    double norm() const { return std::max(std::abs(z1), std::abs(z2)); }
};

// Off-origin poles a1 = (eps1, 0), a2 = (0, eps2); origin pole a0 = (0,0) implicit.
struct PoleConfig {
    cplx eps1, eps2;

    PoleConfig(cplx e1, cplx e2) : eps1(e1), eps2(e2) {
        if (e1 == cplx(0.0) || e2 == cplx(0.0))
            throw DomainError("PoleConfig: eps1, eps2 must be nonzero");
        if (!(std::abs(e1) < 1.0 && std::abs(e2) < 1.0))
            throw DomainError("PoleConfig: |eps| must be < 1");
    }
};

// Preimages (zeta0, zeta1, zeta2) of z, a1, a2 under a normalized disk map
// fixing 0 -> (0,0).  All nonzero and pairwise distinct when valid.
struct NodeTriple {
    cplx zeta0, zeta1, zeta2;
};

inline bool nodes_in_disk(const NodeTriple& n) {
    return std::abs(n.zeta0) < 1.0 && std::abs(n.zeta1) < 1.0 && std::abs(n.zeta2) < 1.0;
}

}  // namespace lemlab
