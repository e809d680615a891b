#include "lemlab/bounds.hpp"
#include "lemlab/constructions.hpp"
#include "lemlab/lempert_core.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <vector>

namespace lemlab {

namespace {

constexpr double kInfeasibleWall = 1e9;
constexpr double kLogRadiusMax = -1e-9;   // keeps |zeta| < 1
constexpr double kLogRadiusMin = -60.0;

using Params = std::array<double, 6>;

NodeTriple decode(const Params& x) {
    auto node = [](double s, double theta) {
        return std::polar(std::exp(std::clamp(s, kLogRadiusMin, kLogRadiusMax)), theta);
    };
    return NodeTriple{node(x[0], x[1]), node(x[2], x[3]), node(x[4], x[5])};
}

Params encode(const NodeTriple& n) {
    return Params{std::log(std::abs(n.zeta0)), std::arg(n.zeta0),
                  std::log(std::abs(n.zeta1)), std::arg(n.zeta1),
                  std::log(std::abs(n.zeta2)), std::arg(n.zeta2)};
}

struct Candidate {
    double value = std::numeric_limits<double>::infinity();
    NodeTriple nodes{};
    EstimateMethod origin = EstimateMethod::Optimizer;
    bool feasible = false;
};

struct Objective {
    const BidiskPoint& z;
    const PoleConfig& p;
    const OptimizerOptions& opts;
    Candidate best;  // best closed-feasible point seen so far

    double operator()(const Params& x, EstimateMethod origin) {
        const NodeTriple n = decode(x);
        if (min_node_separation(n) < opts.collision_tol) return kInfeasibleWall;

        WValues w;
        try {
            w = w_values(n, p, z);
        } catch (const DegenerateNodes&) {
            return kInfeasibleWall;
        }

        const double gap1 = pseudo_distance(n.zeta1, n.zeta0) - pseudo_distance(w.w1, w.w2);
        const double gap2 = pseudo_distance(n.zeta2, n.zeta0) - pseudo_distance(w.w3, w.w4);
        double penalty = std::max(0.0, -gap1) + std::max(0.0, -gap2);
        penalty += std::max(0.0, std::abs(w.w1) - 1.0) + std::max(0.0, std::abs(w.w2) - 1.0);
        penalty += std::max(0.0, std::abs(w.w3) - 1.0) + std::max(0.0, std::abs(w.w4) - 1.0);

        const double cost = normalized_cost(n);
        if (penalty == 0.0) {
            if (cost < best.value ||
                (cost == best.value && std::abs(n.zeta0) < std::abs(best.nodes.zeta0))) {
                best = Candidate{cost, n, origin, true};
            }
        }
        return cost + opts.penalty_weight * penalty;
    }
};

// Standard Nelder-Mead on 6 parameters with a fixed evaluation budget.
void simplex_search(Objective& f, const Params& x0, EstimateMethod seed_origin, int budget,
                    double step) {
    constexpr int N = 6;
    std::array<Params, N + 1> xs;
    std::array<double, N + 1> fs;
    int evals = 0;

    xs[0] = x0;
    fs[0] = f(x0, seed_origin);
    ++evals;
    for (int i = 0; i < N; ++i) {
        xs[i + 1] = x0;
        xs[i + 1][i] += step;
        fs[i + 1] = f(xs[i + 1], EstimateMethod::Optimizer);
        ++evals;
    }

    auto order = [&]() {
        std::array<int, N + 1> idx;
        for (int i = 0; i <= N; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::array<Params, N + 1> x2;
        std::array<double, N + 1> f2;
        for (int i = 0; i <= N; ++i) {
            x2[i] = xs[idx[i]];
            f2[i] = fs[idx[i]];
        }
        xs = x2;
        fs = f2;
    };

    while (evals < budget) {
        order();
        if (fs[N] - fs[0] < 1e-13 * (1.0 + std::abs(fs[0]))) break;

        Params centroid{};
        for (int i = 0; i < N; ++i)
            for (int d = 0; d < 6; ++d) centroid[d] += xs[i][d] / N;

        auto blend = [&](double t) {
            Params out;
            for (int d = 0; d < 6; ++d) out[d] = centroid[d] + t * (xs[N][d] - centroid[d]);
            return out;
        };

        const Params xr = blend(-1.0);
        const double fr = f(xr, EstimateMethod::Optimizer);
        ++evals;
        if (fr < fs[0]) {
            const Params xe = blend(-2.0);
            const double fe = f(xe, EstimateMethod::Optimizer);
            ++evals;
            if (fe < fr) {
                xs[N] = xe;
                fs[N] = fe;
            } else {
                xs[N] = xr;
                fs[N] = fr;
            }
        } else if (fr < fs[N - 1]) {
            xs[N] = xr;
            fs[N] = fr;
        } else {
            const Params xc = blend(fr < fs[N] ? -0.5 : 0.5);
            const double fc = f(xc, EstimateMethod::Optimizer);
            ++evals;
            if (fc < std::min(fr, fs[N])) {
                xs[N] = xc;
                fs[N] = fc;
            } else {
                for (int i = 1; i <= N && evals < budget; ++i) {
                    for (int d = 0; d < 6; ++d) xs[i][d] = 0.5 * (xs[i][d] + xs[0][d]);
                    fs[i] = f(xs[i], EstimateMethod::Optimizer);
                    ++evals;
                }
            }
        }
    }
}

struct Seed {
    Params x;
    EstimateMethod origin;
};

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

void add_construction_seeds(const BidiskPoint& z, const PoleConfig& p, std::vector<Seed>& seeds) {
    if (z.z1 == cplx(0.0) || z.z2 == cplx(0.0)) {
        try {
            const ConstructionResult axis = build_axis_case(z, p);
            if (auto fr = inflate_to_feasible(axis.nodes, p, z))
                seeds.push_back({encode(fr->nodes), EstimateMethod::AxisConstruction});
        } catch (const std::exception&) {
        }
    }
    try {
        const double ac = arg_condition(z, p);
        if (ac > 1e-6) {
            const ConstructionResult gen = build_generic_case(z, p, 0.5 * ac);
            if (auto fr = inflate_to_feasible(gen.nodes, p, z))
                seeds.push_back({encode(fr->nodes), EstimateMethod::GenericConstruction});
        }
    } catch (const std::exception&) {
    }
    try {
        const ResonantCaseResult res = build_resonant_case(z, p);
        seeds.push_back({encode(res.nodes), EstimateMethod::ResonantConstruction});
    } catch (const std::exception&) {
    }

    // Resonant-shaped heuristic seeds beyond the certified |xi| <= 1/4 regime:
    // zeta0 = 1/2, zeta1 = zeta0 + K z1, zeta2 offset by the usual xi' formula.
    if (z.z1 != cplx(0.0) && z.z2 != cplx(0.0)) {
        const bool swapped = std::abs(z.z2) > std::abs(z.z1);
        const cplx z1 = swapped ? z.z2 : z.z1;
        const cplx e1 = swapped ? p.eps2 : p.eps1;
        for (double k : {2.0, -2.0, 4.0, -4.0, 8.0, -8.0}) {
            cplx xi = k * z1;
            if (std::abs(xi) > 0.4) xi *= 0.4 / std::abs(xi);
            const cplx zeta0 = 0.5;
            const cplx zeta1 = zeta0 + xi;
            if (std::abs(zeta1) > 0.95 || std::abs(zeta1) < 0.05) continue;
            const cplx xip = (e1 / z1) * (zeta0 / zeta1) *
                             ((1.0 - std::norm(zeta1)) / (1.0 - zeta0 * std::conj(zeta1))) * xi;
            NodeTriple n{zeta0, zeta1, zeta1 + xip};
            if (!nodes_in_disk(n) || min_node_separation(n) < Tol::node_sep) continue;
            if (swapped) n = NodeTriple{n.zeta0, n.zeta2, n.zeta1};
            if (auto fr = inflate_to_feasible(n, p, z))
                seeds.push_back({encode(fr->nodes), EstimateMethod::Optimizer});
        }
    }
}

}  // namespace

LempertEstimate lempert_upper_via_nodes(const BidiskPoint& z, const PoleConfig& p,
                                        const OptimizerOptions& opts) {
    if ((z.z1 == p.eps1 && z.z2 == cplx(0.0)) || (z.z1 == cplx(0.0) && z.z2 == p.eps2) ||
        (z.z1 == cplx(0.0) && z.z2 == cplx(0.0)))
        throw DomainError("lempert_upper_via_nodes: z must differ from the poles");

    std::vector<Seed> seeds;
    add_construction_seeds(z, p, seeds);

    const int total = std::max(opts.starts, static_cast<int>(seeds.size()));
    // Random starts are generated in swap-symmetric pairs so that the start set
    // is invariant under the (z1,z2)/(eps1,eps2) exchange symmetry.
    const double emin = std::min(std::abs(p.eps1), std::abs(p.eps2));
    const double lo_sat = 0.75 * std::log(emin) - 1.0;
    const double hi_sat = std::log(0.97);
    const double lo_z0 = std::log(z.norm()) - 1.0;

    std::uint64_t pair_idx = 0;
    while (static_cast<int>(seeds.size()) < total) {
        std::mt19937_64 rng(splitmix(opts.seed ^ splitmix(pair_idx + 1)));
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const double s0 = lo_z0 + (hi_sat - lo_z0) * uni(rng);
        const double t0 = 2.0 * M_PI * uni(rng);
        const double sa = lo_sat + (hi_sat - lo_sat) * uni(rng);
        const double ta = 2.0 * M_PI * uni(rng);
        const double sb = lo_sat + (hi_sat - lo_sat) * uni(rng);
        const double tb = 2.0 * M_PI * uni(rng);
        seeds.push_back({Params{s0, t0, sa, ta, sb, tb}, EstimateMethod::Optimizer});
        if (static_cast<int>(seeds.size()) < total)
            seeds.push_back({Params{s0, t0, sb, tb, sa, ta}, EstimateMethod::Optimizer});
        ++pair_idx;
    }

    std::vector<Candidate> results(seeds.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < seeds.size(); i = next.fetch_add(1)) {
            Objective f{z, p, opts, Candidate{}};
            simplex_search(f, seeds[i].x, seeds[i].origin, opts.evals_per_start,
                           opts.simplex_step);
            results[i] = f.best;
        }
    };
    int threads = opts.threads > 0 ? opts.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, static_cast<int>(seeds.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Candidate best;
    int feasible_starts = 0;
    for (const Candidate& c : results) {
        if (!c.feasible) continue;
        ++feasible_starts;
        if (c.value < best.value ||
            (c.value == best.value && std::abs(c.nodes.zeta0) < std::abs(best.nodes.zeta0)))
            best = c;
    }
    if (!best.feasible)
        throw NoFeasiblePoint("lempert_upper_via_nodes: no feasible node triple found");

    LempertEstimate est;
    est.value = best.value;
    est.nodes = best.nodes;
    est.method = best.origin;
    est.feasible_starts = feasible_starts;

    const FeasibilityReport rep = node_feasible(best.nodes, p, z);
    est.verdict = rep.verdict;
    const AnalyticDiskMap m = assemble_map(best.nodes, p, z);
    const MapCheck check = verify_map(m, interpolation_conditions(best.nodes, p, z), 4096);
    est.residual = check.residual;
    est.boundary_sup = check.boundary_sup;
    return est;
}

}  // namespace lemlab
