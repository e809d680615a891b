// lemlab: three-pole Lempert function experiments on the bidisk.
//
// Subcommands: eval, sweep, construct, verify, lower-bound-constant.
// Configuration comes from an optional JSON file plus flag overrides.
// Exit codes: 0 success, 2 invalid configuration, 3 acceptance-band violation
// in `sweep --check`, 4 certificate contradiction witness found.

#include "CLI11.hpp"
#include "json.hpp"

#include "lemlab/bounds.hpp"
#include "lemlab/constructions.hpp"
#include "lemlab/green_limits.hpp"
#include "lemlab/lempert_core.hpp"
#include "lemlab/sweep.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using nlohmann::json;
using namespace lemlab;

namespace {

struct CliOptions {
    std::string config_path;
    std::string z_arg, eps_arg, u_arg, path_arg, out_path, format;
    double t0 = -1.0, ratio = -1.0, c0 = -1.0;
    int count = -1, jobs = -1, starts = -1, evals = -1;
    long long seed = -1;
    bool emit_plotdata = false;
    bool check = false;
};

std::pair<cplx, cplx> parse_pair(const std::string& s) {
    const size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw DomainError("expected two comma-separated complex values: " + s);
    return {parse_complex(s.substr(0, comma)), parse_complex(s.substr(comma + 1))};
}

cplx complex_from_json(const json& j) {
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2)
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw DomainError("complex values must be \"re+imj\" strings or [re, im] pairs");
}

json complex_to_json(cplx v) { return format_complex(v); }

PathKind parse_path(const std::string& s) {
    if (s == "equal") return PathKind::Equal;
    if (s == "resonant") return PathKind::Resonant;
    if (s == "generic") return PathKind::Generic;
    if (s == "custom") return PathKind::Custom;
    throw DomainError("unknown path kind: " + s + " (equal|resonant|generic|custom)");
}

json load_config(const CliOptions& cli) {
    json cfg = json::object();
    if (!cli.config_path.empty()) {
        std::ifstream in(cli.config_path);
        if (!in) throw DomainError("cannot open config file: " + cli.config_path);
        in >> cfg;
    }
    return cfg;
}

OptimizerOptions optimizer_from(const json& cfg, const CliOptions& cli) {
    OptimizerOptions opt;
    if (cfg.contains("optimizer")) {
        const json& o = cfg["optimizer"];
        if (o.contains("seed")) opt.seed = o["seed"].get<std::uint64_t>();
        if (o.contains("starts")) opt.starts = o["starts"].get<int>();
        if (o.contains("evals")) opt.evals_per_start = o["evals"].get<int>();
        if (o.contains("penalty_weight")) opt.penalty_weight = o["penalty_weight"].get<double>();
        if (o.contains("collision_tol")) opt.collision_tol = o["collision_tol"].get<double>();
        if (o.contains("simplex_step")) opt.simplex_step = o["simplex_step"].get<double>();
        if (o.contains("threads")) opt.threads = o["threads"].get<int>();
    }
    if (cli.seed >= 0) opt.seed = static_cast<std::uint64_t>(cli.seed);
    if (cli.starts > 0) opt.starts = cli.starts;
    if (cli.evals > 0) opt.evals_per_start = cli.evals;
    return opt;
}

BidiskPoint z_from(const json& cfg, const CliOptions& cli) {
    if (!cli.z_arg.empty()) {
        const auto [a, b] = parse_pair(cli.z_arg);
        return BidiskPoint(a, b);
    }
    if (cfg.contains("z"))
        return BidiskPoint(complex_from_json(cfg["z"][0]), complex_from_json(cfg["z"][1]));
    throw DomainError("missing z (flag --z or config key \"z\")");
}

SweepSpec spec_from(const json& cfg, const CliOptions& cli) {
    SweepSpec spec;
    spec.z = z_from(cfg, cli);
    std::string path = cfg.value("path", "generic");
    if (!cli.path_arg.empty()) path = cli.path_arg;
    spec.path = parse_path(path);
    if (cfg.contains("u")) {
        spec.u1 = complex_from_json(cfg["u"][0]);
        spec.u2 = complex_from_json(cfg["u"][1]);
    }
    if (!cli.u_arg.empty()) {
        const auto [a, b] = parse_pair(cli.u_arg);
        spec.u1 = a;
        spec.u2 = b;
    }
    if (spec.u1 == cplx(0.0) || spec.u2 == cplx(0.0))
        throw DomainError("generic path directions must be nonzero");
    spec.u1 /= std::abs(spec.u1);
    spec.u2 /= std::abs(spec.u2);
    spec.t0 = cli.t0 > 0 ? cli.t0 : cfg.value("t0", 1e-2);
    spec.ratio = cli.ratio > 0 ? cli.ratio : cfg.value("ratio", 0.1);
    spec.count = cli.count > 0 ? cli.count : cfg.value("count", 5);
    spec.c0 = cli.c0 > 0 ? cli.c0 : cfg.value("c0", 1.0);
    spec.jobs = cli.jobs > 0 ? cli.jobs : cfg.value("jobs", 1);
    if (cfg.contains("custom_eps"))
        for (const json& pair : cfg["custom_eps"])
            spec.custom_eps.emplace_back(complex_from_json(pair[0]), complex_from_json(pair[1]));
    spec.opt = optimizer_from(cfg, cli);
    return spec;
}

PoleConfig eps_from(const json& cfg, const CliOptions& cli) {
    if (!cli.eps_arg.empty()) {
        const auto [a, b] = parse_pair(cli.eps_arg);
        return PoleConfig(a, b);
    }
    if (cfg.contains("eps"))
        return PoleConfig(complex_from_json(cfg["eps"][0]), complex_from_json(cfg["eps"][1]));
    throw DomainError("missing eps (flag --eps or config key \"eps\")");
}

json record_to_json(const SweepRecord& rec) {
    json j;
    j["t"] = rec.t;
    j["eps1"] = complex_to_json(rec.eps1);
    j["eps2"] = complex_to_json(rec.eps2);
    if (rec.optimizer_value) j["optimizer_value"] = *rec.optimizer_value;
    if (rec.axis_cost) j["axis_cost"] = *rec.axis_cost;
    if (rec.generic_cost) j["generic_cost"] = *rec.generic_cost;
    if (rec.resonant_cost) j["resonant_cost"] = *rec.resonant_cost;
    j["g1"] = rec.g1;
    j["g2"] = rec.g2;
    j["g3"] = rec.g3;
    j["three_half_log_z"] = rec.three_half_log_z;
    j["two_log_z"] = rec.two_log_z;
    j["residual"] = rec.residual;
    j["boundary_sup"] = rec.boundary_sup;
    j["feasible_starts"] = rec.feasible_starts;
    j["wall_time_s"] = rec.wall_time_s;
    if (rec.have_nodes) {
        j["method"] = estimate_method_name(rec.method);
        j["nodes"] = {complex_to_json(rec.best_nodes.zeta0),
                      complex_to_json(rec.best_nodes.zeta1),
                      complex_to_json(rec.best_nodes.zeta2)};
    }
    if (!rec.error.empty()) j["error"] = rec.error;
    return j;
}

json chain_to_json(const ChainReport& rep) {
    json j;
    j["cost"] = rep.cost;
    j["bar"] = rep.bar;
    j["hypothesis_holds"] = rep.hypothesis_holds;
    j["premises_hold"] = rep.premises_hold;
    j["smallness_ok"] = rep.smallness_ok;
    j["contradiction_witness"] = rep.contradiction_witness;
    j["w"] = {complex_to_json(rep.w.w1), complex_to_json(rep.w.w2), complex_to_json(rep.w.w3),
              complex_to_json(rep.w.w4)};
    json steps = json::array();
    for (const ChainStep& s : rep.steps)
        steps.push_back({{"name", s.name},
                         {"lhs", s.lhs},
                         {"rhs", s.rhs},
                         {"holds", s.holds},
                         {"smallness_ok", s.smallness_ok}});
    j["steps"] = steps;
    return j;
}

void write_output(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open output file: " + path);
    out << body;
}

int cmd_eval(const CliOptions& cli) {
    const json cfg = load_config(cli);
    const BidiskPoint z = z_from(cfg, cli);
    const PoleConfig p = eps_from(cfg, cli);
    const double c0 = cli.c0 > 0 ? cli.c0 : cfg.value("c0", 1.0);
    const OptimizerOptions opt = optimizer_from(cfg, cli);

    SweepRecord rec = evaluate_point(z, p.eps1, p.eps2, c0, opt);
    rec.t = std::max(std::abs(p.eps1), std::abs(p.eps2));

    json j = record_to_json(rec);
    j["z"] = {complex_to_json(z.z1), complex_to_json(z.z2)};
    j["seed"] = opt.seed;
    try {
        j["arg_condition"] = arg_condition(z, p);
    } catch (const ZeroInput&) {
    }
    write_output(cli.out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const CliOptions& cli) {
    const json cfg = load_config(cli);
    const SweepSpec spec = spec_from(cfg, cli);
    const SweepResult result = run_sweep(spec);

    std::string format = !cli.format.empty() ? cli.format : cfg.value("format", "csv");
    std::string out = cli.out_path.empty() ? cfg.value("out", "") : cli.out_path;

    if (format == "csv") {
        write_output(out, sweep_csv(result));
    } else if (format == "json") {
        json j;
        j["schema"] = "lemlab-v1";
        j["target"] = result.summary.target;
        j["band"] = {result.summary.band_min, result.summary.band_max};
        j["band_points"] = result.summary.band_points;
        json records = json::array();
        for (const SweepRecord& rec : result.records) records.push_back(record_to_json(rec));
        j["records"] = records;
        write_output(out, j.dump(2) + "\n");
    } else {
        throw DomainError("unknown format: " + format);
    }

    if (cli.emit_plotdata || cfg.value("emit_plotdata", false)) {
        if (out.empty() || out == "-")
            std::cerr << "note: --emit-plotdata needs --out, skipping plot data\n";
        else
            write_output(out + ".plotdata", sweep_plotdata(result));
    }

    if (cli.check) {
        const auto violations = check_sweep_bands(result);
        for (const std::string& v : violations) std::cerr << "band violation: " << v << "\n";
        if (!violations.empty()) return 3;
    }
    return 0;
}

int cmd_construct(const CliOptions& cli) {
    const json cfg = load_config(cli);
    const BidiskPoint z = z_from(cfg, cli);
    const PoleConfig p = eps_from(cfg, cli);
    const double c0 = cli.c0 > 0 ? cli.c0 : cfg.value("c0", 1.0);

    json j;
    j["z"] = {complex_to_json(z.z1), complex_to_json(z.z2)};
    j["eps"] = {complex_to_json(p.eps1), complex_to_json(p.eps2)};

    auto describe = [&](const char* name, auto&& build) {
        try {
            const ConstructionResult r = build();
            const MapCheck chk = verify_map(r.map, interpolation_conditions(r.nodes, p, z), 4096);
            json c;
            c["cost"] = r.cost;
            c["gamma"] = r.gamma;
            c["residual"] = chk.residual;
            c["boundary_sup"] = chk.boundary_sup;
            c["nodes"] = {complex_to_json(r.nodes.zeta0), complex_to_json(r.nodes.zeta1),
                          complex_to_json(r.nodes.zeta2)};
            if (auto fr = inflate_to_feasible(r.nodes, p, z)) {
                c["feasible_cost"] = fr->cost;
                c["inflation"] = fr->inflation;
            }
            j[name] = c;
        } catch (const std::exception& e) {
            j[name] = {{"error", e.what()}};
        }
    };
    describe("axis", [&] { return build_axis_case(z, p); });
    describe("generic", [&] { return build_generic_case(z, p, c0); });
    try {
        const ResonantCaseResult r = build_resonant_case(z, p);
        json c;
        c["cost"] = r.cost;
        c["nodes"] = {complex_to_json(r.nodes.zeta0), complex_to_json(r.nodes.zeta1),
                      complex_to_json(r.nodes.zeta2)};
        c["w_moduli"] = {std::abs(r.report.w1), std::abs(r.report.w2), std::abs(r.report.w3),
                         std::abs(r.report.w4)};
        c["gap1"] = r.report.gap1;
        c["gap2"] = r.report.gap2;
        c["xi"] = complex_to_json(r.params.xi);
        c["xi_prime"] = complex_to_json(r.params.xi_prime);
        c["gamma_drift"] = complex_to_json(r.params.gamma_drift);
        j["resonant"] = c;
    } catch (const std::exception& e) {
        j["resonant"] = {{"error", e.what()}};
    }

    write_output(cli.out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_verify(const CliOptions& cli) {
    const json cfg = load_config(cli);
    const SweepSpec spec = spec_from(cfg, cli);
    const double c0 = spec.c0;
    const SweepResult result = run_sweep(spec);
    const CertificateBatch batch = verify_certificates(result, lower_bound_constant(c0));

    json j;
    j["schema"] = "lemlab-v1";
    j["c0"] = c0;
    j["CH_prime"] = lower_bound_constant(c0).CH_prime;
    json points = json::array();
    for (const PointCertificate& pc : batch.points) {
        json pj;
        pj["t"] = pc.t;
        pj["status"] = pc.status;
        if (pc.report) pj["report"] = chain_to_json(*pc.report);
        points.push_back(pj);
    }
    j["points"] = points;
    j["any_witness"] = batch.any_witness;
    write_output(cli.out_path, j.dump(2) + "\n");
    return batch.any_witness ? 4 : 0;
}

int cmd_lower_bound_constant(const CliOptions& cli) {
    const json cfg = load_config(cli);
    const double c0 = cli.c0 > 0 ? cli.c0 : cfg.value("c0", 1.0);
    const LowerBoundConstants c = lower_bound_constant(c0);
    json j;
    j["c0"] = c.c0;
    j["CH_prime"] = c.CH_prime;
    j["C"] = c.C;
    j["c1_audit"] = c.c1_audit;
    j["c2_audit"] = c.c2_audit;
    write_output(cli.out_path, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-pole Lempert function estimates and sweeps on the bidisk"};
    app.require_subcommand(1);

    CliOptions cli;
    app.add_option("--config", cli.config_path, "JSON configuration file");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", cli.config_path, "JSON configuration file");
        sub->add_option("--z", cli.z_arg, "evaluation point, e.g. \"0.3+0j,0+0.3j\"");
        sub->add_option("--c0", cli.c0, "direction-condition constant in (0,1]");
        sub->add_option("--seed", cli.seed, "optimizer seed");
        sub->add_option("--starts", cli.starts, "optimizer multi-start count");
        sub->add_option("--evals", cli.evals, "objective evaluations per start");
        sub->add_option("--out", cli.out_path, "output file (default stdout)");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate one (z, eps) configuration");
    add_common(eval);
    eval->add_option("--eps", cli.eps_arg, "pole sizes, e.g. \"1e-4+0j,1e-4+0j\"");

    CLI::App* sweep = app.add_subcommand("sweep", "run an eps -> 0 sweep");
    add_common(sweep);
    sweep->add_option("--path", cli.path_arg, "equal|resonant|generic|custom");
    sweep->add_option("--u", cli.u_arg, "generic-path unit directions \"u1,u2\"");
    sweep->add_option("--t0", cli.t0, "initial t");
    sweep->add_option("--ratio", cli.ratio, "geometric ratio in (0,1)");
    sweep->add_option("--count", cli.count, "number of sweep points");
    sweep->add_option("--jobs", cli.jobs, "concurrent sweep points");
    sweep->add_option("--format", cli.format, "csv|json (default csv)");
    sweep->add_flag("--emit-plotdata", cli.emit_plotdata, "write (log t, value) pairs");
    sweep->add_flag("--check", cli.check, "exit 3 when the acceptance band is violated");

    CLI::App* construct = app.add_subcommand("construct", "run the explicit disk constructions");
    add_common(construct);
    construct->add_option("--eps", cli.eps_arg, "pole sizes");

    CLI::App* verify = app.add_subcommand("verify", "chain certificates over a sweep");
    add_common(verify);
    verify->add_option("--path", cli.path_arg, "equal|resonant|generic|custom");
    verify->add_option("--u", cli.u_arg, "generic-path unit directions");
    verify->add_option("--t0", cli.t0, "initial t");
    verify->add_option("--ratio", cli.ratio, "geometric ratio");
    verify->add_option("--count", cli.count, "number of sweep points");
    verify->add_option("--jobs", cli.jobs, "concurrent sweep points");

    CLI::App* lbc = app.add_subcommand("lower-bound-constant", "explicit C(c0)");
    add_common(lbc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(cli);
        if (sweep->parsed()) return cmd_sweep(cli);
        if (construct->parsed()) return cmd_construct(cli);
        if (verify->parsed()) return cmd_verify(cli);
        if (lbc->parsed()) return cmd_lower_bound_constant(cli);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
