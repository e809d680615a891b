#include "lemlab/sweep.hpp"

#include "lemlab/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace lemlab {

void validate_spec(const SweepSpec& spec) {
    if (!(spec.t0 > 0.0 && spec.t0 < 1.0))
        throw DomainError("sweep: t0 must lie in (0,1)");
    if (!(spec.ratio > 0.0 && spec.ratio < 1.0))
        throw DomainError("sweep: ratio must lie in (0,1) so t decreases");
    if (spec.count < 1) throw DomainError("sweep: count must be >= 1");
    if (!(spec.c0 > 0.0 && spec.c0 <= 1.0)) throw DomainError("sweep: c0 must lie in (0,1]");
    if (spec.path == PathKind::Generic) {
        if (std::abs(std::abs(spec.u1) - 1.0) > 1e-12 || std::abs(std::abs(spec.u2) - 1.0) > 1e-12)
            throw DomainError("sweep: u1, u2 must be unit directions");
        if (spec.z.z1 != cplx(0.0) && spec.z.z2 != cplx(0.0)) {
            const double ac = std::abs(circle_projection(spec.z.z1 / spec.z.z2) +
                                       circle_projection(spec.u1 / spec.u2));
            if (ac < spec.c0)
                throw DomainError("sweep: generic path directions violate the c0 condition");
        }
    }
    if (spec.path == PathKind::Custom && static_cast<int>(spec.custom_eps.size()) != spec.count)
        throw DomainError("sweep: custom path needs exactly `count` eps pairs");
    double t = spec.t0;
    for (int i = 0; i < spec.count; ++i, t *= spec.ratio) {
        const auto [e1, e2] = path_eps(spec, t, i);
        if (e1 == cplx(0.0) || e2 == cplx(0.0) || std::abs(e1) >= 1.0 || std::abs(e2) >= 1.0)
            throw DomainError("sweep: pole path leaves the punctured bidisk");
    }
}

std::pair<cplx, cplx> path_eps(const SweepSpec& spec, double t, int index) {
    switch (spec.path) {
        case PathKind::Equal:
            return {cplx(t, 0.0), cplx(t, 0.0)};
        case PathKind::Resonant: {
            if (spec.z.z1 == cplx(0.0))
                throw DomainError("sweep: resonant path needs z1 != 0");
            const cplx mu = spec.z.z2 / spec.z.z1;
            return {cplx(t, 0.0), -(mu - t) * t};
        }
        case PathKind::Generic:
            return {t * spec.u1, t * spec.u2};
        case PathKind::Custom:
            return spec.custom_eps.at(static_cast<size_t>(index));
    }
    throw DomainError("sweep: unknown path kind");
}

SweepRecord evaluate_point(const BidiskPoint& z, cplx eps1, cplx eps2, double c0,
                           const OptimizerOptions& opts) {
    const auto t_start = std::chrono::steady_clock::now();
    SweepRecord rec;
    rec.eps1 = eps1;
    rec.eps2 = eps2;

    const SandwichReport green = sandwich_report(z);
    rec.g1 = green.g1;
    rec.g2 = green.g2;
    rec.g3 = green.g3;
    rec.three_half_log_z = 1.5 * std::log(z.norm());
    rec.two_log_z = 2.0 * std::log(z.norm());

    const PoleConfig p(eps1, eps2);

    // Applicable constructions, published as feasible realizations.
    if (z.z1 == cplx(0.0) || z.z2 == cplx(0.0)) {
        try {
            const ConstructionResult axis = build_axis_case(z, p);
            if (auto fr = inflate_to_feasible(axis.nodes, p, z)) rec.axis_cost = fr->cost;
        } catch (const std::exception&) {
        }
    } else {
        try {
            if (arg_condition(z, p) >= c0) {
                const ConstructionResult gen = build_generic_case(z, p, c0);
                if (auto fr = inflate_to_feasible(gen.nodes, p, z)) rec.generic_cost = fr->cost;
            }
        } catch (const std::exception&) {
        }
        try {
            const ResonantCaseResult res = build_resonant_case(z, p);
            rec.resonant_cost = res.cost;
        } catch (const std::exception&) {
        }
    }

    try {
        const LempertEstimate est = lempert_upper_via_nodes(z, p, opts);
        rec.optimizer_value = est.value;
        rec.residual = est.residual;
        rec.boundary_sup = est.boundary_sup;
        rec.feasible_starts = est.feasible_starts;
        rec.best_nodes = est.nodes;
        rec.have_nodes = true;
        rec.method = est.method;
    } catch (const NoFeasiblePoint& e) {
        rec.error = e.what();
    }

    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rec;
}

double regime_target(const SweepSpec& spec) {
    const double logz = std::log(spec.z.norm());
    switch (spec.path) {
        case PathKind::Generic:
            return 1.5 * logz;
        case PathKind::Equal:
        case PathKind::Resonant:
            return 2.0 * logz;
        case PathKind::Custom: {
            // Classify by the direction condition at the final eps pair.
            const auto& [e1, e2] = spec.custom_eps.back();
            try {
                const double ac = arg_condition(spec.z, PoleConfig(e1, e2));
                return ac >= spec.c0 ? 1.5 * logz : 2.0 * logz;
            } catch (const std::exception&) {
                return 2.0 * logz;
            }
        }
    }
    return 2.0 * logz;
}

SweepResult run_sweep(const SweepSpec& spec) {
    validate_spec(spec);

    std::vector<double> ts(static_cast<size_t>(spec.count));
    double t = spec.t0;
    for (int i = 0; i < spec.count; ++i, t *= spec.ratio) ts[static_cast<size_t>(i)] = t;

    SweepResult out;
    out.spec = spec;
    out.records.resize(ts.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < ts.size(); i = next.fetch_add(1)) {
            OptimizerOptions opts = spec.opt;
            opts.seed = spec.opt.seed + static_cast<std::uint64_t>(i);
            const auto [e1, e2] = path_eps(spec, ts[i], static_cast<int>(i));
            out.records[i] = evaluate_point(spec.z, e1, e2, spec.c0, opts);
            out.records[i].t = ts[i];
        }
    };
    const int jobs = std::clamp(spec.jobs, 1, static_cast<int>(ts.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SweepSummary s;
    s.target = regime_target(spec);
    const size_t half_start = ts.size() - (ts.size() + 1) / 2;
    bool first = true;
    for (size_t i = half_start; i < ts.size(); ++i) {
        if (!out.records[i].optimizer_value) continue;
        const double dev = *out.records[i].optimizer_value - s.target;
        if (first) {
            s.band_min = s.band_max = dev;
            first = false;
        } else {
            s.band_min = std::min(s.band_min, dev);
            s.band_max = std::max(s.band_max, dev);
        }
        ++s.band_points;
    }
    out.summary = s;
    return out;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(cplx v) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", v.real(), v.imag());
    return buf;
}

cplx parse_complex(const std::string& s) {
    std::string str = s;
    str.erase(std::remove_if(str.begin(), str.end(), [](char c) { return std::isspace(c); }),
              str.end());
    if (str.empty()) throw DomainError("parse_complex: empty string");

    bool imag_suffix = false;
    if (str.back() == 'j' || str.back() == 'i' || str.back() == 'J' || str.back() == 'I') {
        imag_suffix = true;
        str.pop_back();
    }

    // Split at the last top-level +/- that is not an exponent sign.
    size_t split = std::string::npos;
    for (size_t k = str.size(); k-- > 1;) {
        const char c = str[k];
        if ((c == '+' || c == '-') && str[k - 1] != 'e' && str[k - 1] != 'E') {
            split = k;
            break;
        }
    }

    auto to_double = [](const std::string& part) {
        if (part.empty() || part == "+" || part == "-")
            return part == "-" ? -1.0 : 1.0;  // bare sign before j
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &pos);
        } catch (const std::exception&) {
            throw DomainError("parse_complex: not a number: " + part);
        }
        if (pos != part.size()) throw DomainError("parse_complex: trailing characters");
        return v;
    };

    if (!imag_suffix) {
        if (split != std::string::npos)
            throw DomainError("parse_complex: missing j suffix on imaginary part");
        return cplx(to_double(str), 0.0);
    }
    if (split == std::string::npos) return cplx(0.0, to_double(str));
    return cplx(to_double(str.substr(0, split)), to_double(str.substr(split)));
}

std::string sweep_csv(const SweepResult& r) {
    std::ostringstream os;
    os << "lemlab-v1\n";
    os << "t,eps1_re,eps1_im,eps2_re,eps2_im,optimizer_value,axis_cost,generic_cost,"
          "resonant_cost,g1,g2,g3,three_half_log_z,two_log_z,residual,boundary_sup,"
          "feasible_starts\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_g17(*v) : std::string(); };
    for (const SweepRecord& rec : r.records) {
        os << format_g17(rec.t) << ',' << format_g17(rec.eps1.real()) << ','
           << format_g17(rec.eps1.imag()) << ',' << format_g17(rec.eps2.real()) << ','
           << format_g17(rec.eps2.imag()) << ',' << opt(rec.optimizer_value) << ','
           << opt(rec.axis_cost) << ',' << opt(rec.generic_cost) << ','
           << opt(rec.resonant_cost) << ',' << format_g17(rec.g1) << ',' << format_g17(rec.g2)
           << ',' << format_g17(rec.g3) << ',' << format_g17(rec.three_half_log_z) << ','
           << format_g17(rec.two_log_z) << ',' << format_g17(rec.residual) << ','
           << format_g17(rec.boundary_sup) << ',' << rec.feasible_starts << '\n';
    }
    return os.str();
}

std::string sweep_plotdata(const SweepResult& r) {
    std::ostringstream os;
    for (const SweepRecord& rec : r.records)
        if (rec.optimizer_value)
            os << format_g17(std::log(rec.t)) << ' ' << format_g17(*rec.optimizer_value) << '\n';
    return os.str();
}

std::vector<std::string> check_sweep_bands(const SweepResult& r) {
    std::vector<std::string> violations;
    const SweepSpec& spec = r.spec;
    const double target = r.summary.target;
    const bool generic_regime = target == 1.5 * std::log(spec.z.norm());

    if (r.summary.band_points == 0) {
        violations.push_back("no optimizer values in the checked half of the schedule");
        return violations;
    }

    std::ostringstream msg;
    if (generic_regime) {
        const double width = r.summary.band_max - r.summary.band_min;
        if (width > 1.0) {
            msg.str("");
            msg << "band width " << width << " exceeds 1.0";
            violations.push_back(msg.str());
        }
        const double floor = -lower_bound_constant(spec.c0).C - 0.5;
        if (r.summary.band_min < floor) {
            msg.str("");
            msg << "band minimum " << r.summary.band_min << " below " << floor;
            violations.push_back(msg.str());
        }
        double max_gen_dev = 1.0;
        for (const SweepRecord& rec : r.records)
            if (rec.generic_cost) max_gen_dev = std::max(max_gen_dev, *rec.generic_cost - target);
        if (r.summary.band_max > max_gen_dev + 0.5) {
            msg.str("");
            msg << "band maximum " << r.summary.band_max << " above " << max_gen_dev + 0.5;
            violations.push_back(msg.str());
        }
    } else {
        if (r.summary.band_min < -0.2) {
            msg.str("");
            msg << "band minimum " << r.summary.band_min << " below -0.2";
            violations.push_back(msg.str());
        }
        const double cap = resonant_cost_slack() + 0.2;
        if (r.summary.band_max > cap) {
            msg.str("");
            msg << "band maximum " << r.summary.band_max << " above " << cap;
            violations.push_back(msg.str());
        }
    }
    return violations;
}

CertificateBatch verify_certificates(const SweepResult& r, const LowerBoundConstants& consts) {
    CertificateBatch batch;
    for (const SweepRecord& rec : r.records) {
        PointCertificate pc;
        pc.t = rec.t;
        if (!rec.have_nodes) {
            pc.status = "no_nodes";
            batch.points.push_back(pc);
            continue;
        }
        try {
            const PoleConfig p(rec.eps1, rec.eps2);
            pc.report = chain_certificate(r.spec.z, p, rec.best_nodes, r.spec.c0, consts);
            pc.status = "ok";
            batch.any_witness = batch.any_witness || pc.report->contradiction_witness;
        } catch (const HypothesisViolated&) {
            pc.status = "hypothesis_violated";
        } catch (const DegenerateNodes&) {
            pc.status = "degenerate";
        }
        batch.points.push_back(pc);
    }
    return batch;
}

}  // namespace lemlab
