#pragma once

#include "lemlab/bounds.hpp"
#include "lemlab/green_limits.hpp"
#include "lemlab/lempert_core.hpp"
#include "lemlab/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lemlab {

enum class PathKind { Equal, Resonant, Generic, Custom };

// One eps -> 0 experiment: pole path, geometric t schedule, optimizer budget.
struct SweepSpec {
    BidiskPoint z{cplx(0.3, 0.0), cplx(0.0, 0.3)};
    PathKind path = PathKind::Generic;
    cplx u1{1.0, 0.0}, u2{1.0, 0.0};  // unit directions for the Generic path
    double t0 = 1e-2;
    double ratio = 0.1;
    int count = 5;
    std::vector<std::pair<cplx, cplx>> custom_eps;
    double c0 = 1.0;
    OptimizerOptions opt;
    int jobs = 1;
};

struct SweepRecord {
    double t = 0.0;
    cplx eps1, eps2;
    std::optional<double> optimizer_value;
    std::optional<double> axis_cost, generic_cost, resonant_cost;
    double g1 = 0.0, g2 = 0.0, g3 = 0.0;
    double three_half_log_z = 0.0, two_log_z = 0.0;
    double residual = 0.0, boundary_sup = 0.0;
    int feasible_starts = 0;
    double wall_time_s = 0.0;  // reported in JSON only; CSV stays byte-deterministic
    NodeTriple best_nodes{};
    bool have_nodes = false;
    EstimateMethod method = EstimateMethod::Optimizer;
    std::string error;
};

struct SweepSummary {
    double target = 0.0;  // (3/2) log|z| or 2 log|z| per regime
    double band_min = 0.0, band_max = 0.0;
    int band_points = 0;  // points of the last half with an optimizer value
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRecord> records;
    SweepSummary summary;
};

void validate_spec(const SweepSpec& spec);

std::pair<cplx, cplx> path_eps(const SweepSpec& spec, double t, int index);

// Single-point evaluation: optimizer estimate, applicable construction costs
// (as feasible realizations), Green bounds.
SweepRecord evaluate_point(const BidiskPoint& z, cplx eps1, cplx eps2, double c0,
                           const OptimizerOptions& opts);

double regime_target(const SweepSpec& spec);

SweepResult run_sweep(const SweepSpec& spec);

// Fixed column order, header line "lemlab-v1", floats with 17 significant
// digits; byte-identical for identical spec + seed.
std::string sweep_csv(const SweepResult& r);

// (log t, optimizer value) pairs for plotting.
std::string sweep_plotdata(const SweepResult& r);

// Acceptance-band check; returns human-readable violations (empty = pass).
std::vector<std::string> check_sweep_bands(const SweepResult& r);

struct PointCertificate {
    double t = 0.0;
    std::string status;  // "ok", "hypothesis_violated", "no_nodes", "degenerate"
    std::optional<ChainReport> report;
};

struct CertificateBatch {
    std::vector<PointCertificate> points;
    bool any_witness = false;
};

CertificateBatch verify_certificates(const SweepResult& r, const LowerBoundConstants& consts);

// Complex scalar formatting used across CSV/JSON: "re+imj" with %.17g parts.
std::string format_g17(double v);
std::string format_complex(cplx v);
cplx parse_complex(const std::string& s);

}  // namespace lemlab
