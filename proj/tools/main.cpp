// Command-line driver: simulation ensembles, rate-functional numerics and
// the cross-checks between them. Exit code 0 on pass, 2 when a comparison
// verdict fails, 1 on errors.

#include <CLI11.hpp>
#include <iostream>
#include <thread>
#include <json.hpp>

#include "wasep/experiments.hpp"
#include "wasep/fbm.hpp"
#include "wasep/quad.hpp"

using nlohmann::json;
using namespace wasep;

namespace {

struct CommonArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    std::int64_t replicas = 0;
    std::string out_dir;
    int workers = int(std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "key=value parameter file");
    cmd->add_option("--seed", args.seed, "ensemble seed (overrides config)");
    cmd->add_option("--replicas", args.replicas, "replica count (overrides config)");
    cmd->add_option("--out", args.out_dir, "output directory for CSV/JSON");
    cmd->add_option("--workers", args.workers, "worker threads");
}

ExperimentSpec make_spec(const CommonArgs& args, ExperimentKind kind) {
    ExperimentSpec spec;
    if (!args.config_path.empty()) {
        const RunConfig cfg = parse_config_file(args.config_path);
        spec.params = cfg.params;
        spec.seed = cfg.seed;
        spec.replicas = cfg.replicas;
    }
    if (args.seed != 0) spec.seed = args.seed;
    if (args.replicas != 0) spec.replicas = args.replicas;
    spec.out_dir = args.out_dir;
    spec.workers = args.workers;
    spec.kind = kind;
    return spec;
}

int finish(const ExperimentResult& res) {
    std::cout << (res.pass ? "PASS" : "FAIL");
    if (!res.json_path.empty()) std::cout << "  summary: " << res.json_path;
    std::cout << "\n";
    return res.pass ? 0 : 2;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weakly asymmetric exclusion simulator and rate-function toolkit"};
    app.require_subcommand(1);

    CommonArgs sim_args, occ_args, mdp_args, ver_args;
    std::string sim_kind = "stationarity";
    std::string jump_log;
    auto* sim = app.add_subcommand("simulate", "run a simulation ensemble");
    add_common(sim, sim_args);
    sim->add_option("--kind", sim_kind,
                    "stationarity | martingale-check | tilted-hydro");
    sim->add_option("--jump-log", jump_log, "binary jump log of replica 0");

    auto* occ = app.add_subcommand("occupation", "occupation-time variance ensemble");
    add_common(occ, occ_args);

    auto* mdp = app.add_subcommand("mdp-estimate", "importance-sampled event probability");
    add_common(mdp, mdp_args);
    double mdp_threshold = 0.0;
    bool mdp_no_tilt = false;
    mdp->add_option("--threshold", mdp_threshold, "event level (default ~2 sd)");
    mdp->add_flag("--no-tilt", mdp_no_tilt, "plain Monte Carlo only");

    auto* ver = app.add_subcommand("verify-rates", "deterministic rate-theory checks");
    add_common(ver, ver_args);

    CommonArgs rate_args;
    std::string rate_times = "1", rate_alpha = "1";
    double rate_rho = 0.5;
    auto* rate = app.add_subcommand("rate", "finite-dimensional rate and minimizer");
    add_common(rate, rate_args);
    rate->add_option("--times", rate_times, "comma-separated constraint times");
    rate->add_option("--alpha", rate_alpha, "comma-separated constraint levels");
    rate->add_option("--rho", rate_rho, "density");

    CommonArgs fbm_args;
    std::int64_t fbm_samples = 10000;
    std::string fbm_times = "0.5,1";
    auto* fbm = app.add_subcommand("fbm", "fractional Brownian motion checks");
    add_common(fbm, fbm_args);
    fbm->add_option("--samples", fbm_samples, "sampler draws");
    fbm->add_option("--times", fbm_times, "comma-separated grid times");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            if (sim_kind != "stationarity" && sim_kind != "martingale-check" &&
                sim_kind != "tilted-hydro")
                throw std::invalid_argument("simulate --kind must be stationarity, "
                                            "martingale-check or tilted-hydro");
            ExperimentSpec spec = make_spec(sim_args, kind_from_name(sim_kind));
            if (!jump_log.empty()) {
                Rng rng(spec.seed, 1);
                const Configuration c0 = sample_bernoulli(spec.params, spec.seed);
                SimOptions opt;
                opt.record_jumps = true;
                const PathRecord path = simulate(spec.params, c0, opt, spec.seed);
                write_jump_log(path, jump_log);
                std::cout << "wrote " << path.jumps.size() << " events to " << jump_log
                          << "\n";
            }
            return finish(run(spec));
        }
        if (occ->parsed()) return finish(run(make_spec(occ_args, ExperimentKind::OccupationVariance)));
        if (mdp->parsed()) {
            ExperimentSpec spec = make_spec(mdp_args, ExperimentKind::MdpEstimate);
            spec.mdp_threshold = mdp_threshold;
            spec.mdp_use_tilt = !mdp_no_tilt;
            return finish(run(spec));
        }
        if (ver->parsed()) return finish(run(make_spec(ver_args, ExperimentKind::VerifyRates)));
        if (rate->parsed()) {
            const std::vector<double> times = parse_list(rate_times);
            const std::vector<double> alpha = parse_list(rate_alpha);
            const double rho = rate_rho;
            const double r = finite_dim_rate(alpha, times, rho);
            const ProfilePair prof = minimizer_multi(alpha, times, rho);
            const double phin = 2.0 * q0(prof, rho) / chi(rho);
            const double hn = 2.0 * qdyn(prof, rho) / chi(rho);
            const VerifyIntegrals vi = verify_integrals(1.0);
            json out{{"times", times},
                     {"alpha", alpha},
                     {"rho", rho},
                     {"rate", r},
                     {"minimizer_norms", {{"phi_l2_sq", phin}, {"h_h1_sq", hn}}},
                     {"integral_checks",
                      {{"cal1", {{"quad", vi.cal1.quadrature}, {"closed", vi.cal1.closed_form}}},
                       {"cal2", {{"quad", vi.cal2.quadrature}, {"closed", vi.cal2.closed_form}}},
                       {"cal3", {{"quad", vi.cal3.quadrature}, {"closed", vi.cal3.closed_form}}}}},
                     {"build_id", build_id()}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (fbm->parsed()) {
            const std::vector<double> grid = parse_list(fbm_times);
            FbmSampler sampler(grid, 4096);
            Rng rng(fbm_args.seed ? fbm_args.seed : 1, 7);
            std::vector<std::vector<double>> draws;
            draws.reserve(std::size_t(fbm_samples));
            for (std::int64_t i = 0; i < fbm_samples; ++i)
                draws.push_back(sampler.sample(rng));
            json cov = json::array();
            bool pass = true;
            for (std::size_t a = 0; a < grid.size(); ++a)
                for (std::size_t b = a; b < grid.size(); ++b) {
                    double m = 0.0;
                    for (const auto& dr : draws) m += dr[a] * dr[b];
                    m /= double(fbm_samples);
                    const double target = fbm_cov(grid[a], grid[b]);
                    cov.push_back(json{{"s", grid[a]},
                                       {"t", grid[b]},
                                       {"empirical", m},
                                       {"target", target}});
                }
            json ks = json::array();
            for (double t : grid) {
                const double q = fbm_kernel_sq_integral(t);
                const double rel = std::abs(q - std::pow(t, 1.5)) / std::pow(t, 1.5);
                pass = pass && rel <= 1e-4;
                ks.push_back(json{{"t", t}, {"int_K2", q}, {"target", std::pow(t, 1.5)}});
            }
            json out{{"c_K", fbm_kernel_normalization()},
                     {"covariance", cov},
                     {"kernel_sq", ks},
                     {"build_id", build_id()}};
            std::cout << out.dump(2) << "\n";
            return pass ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
