#pragma once

#include <optional>
#include <string>

#include "wasep/mdp.hpp"
#include "wasep/observables.hpp"
#include "wasep/profiles.hpp"
#include "wasep/ratefn.hpp"
#include "wasep/stats.hpp"
#include "wasep/volterra.hpp"

namespace wasep {

enum class ExperimentKind {
    Stationarity,
    OccupationVariance,
    TiltedHydro,
    MartingaleCheck,
    MdpEstimate,
    VerifyRates,
};

std::string kind_name(ExperimentKind k);
ExperimentKind kind_from_name(const std::string& name);

struct ExperimentSpec {
    ScalingParams params;
    ExperimentKind kind = ExperimentKind::VerifyRates;
    std::int64_t replicas = 1;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out_dir;             // empty: no files written
    std::vector<double> grid;        // observation times; kind defaults if empty

    // kind-specific knobs
    double profile_T = 1.0;          // tilted-hydro / mdp tilt horizon
    double profile_alpha = 0.5;      // tilted-hydro constraint level
    double bump_radius = 2.0;        // observable / tilt bump radius
    double phi_amplitude = 0.3;      // martingale-check initial perturbation
    double mdp_threshold = 0.0;      // mdp-estimate event level (0: auto ~2 sd)
    bool mdp_use_tilt = true;
    bool export_jump_log = false;    // first replica, binary
};

struct ExperimentResult {
    SummaryStats stats;
    std::vector<CompareRecord> verdicts;
    bool pass = true;
    std::string json_path;
    std::string csv_path;
};

// Executes the named experiment over the replica ensemble in parallel,
// merges statistics deterministically and (optionally) writes CSV series
// and a JSON summary carrying the config echo, build id and seed.
ExperimentResult run(const ExperimentSpec& spec);

// ---- typed drivers used by run() and by the acceptance suite ----

struct StationarityResult {
    double window_density_mean = 0.0;  // time-averaged density on a window
    double window_density_sem = 0.0;
    double current_mean = 0.0;         // net jumps per replica
    double current_sem = 0.0;
    std::int64_t replicas = 0;
    std::vector<std::vector<double>> density_series;  // per replica
    std::vector<double> grid;
};

StationarityResult run_stationarity(const ScalingParams& p, std::int64_t replicas,
                                    std::uint64_t seed, int workers,
                                    const std::vector<double>& grid);

struct OccupationVarianceResult {
    std::vector<double> times;
    std::vector<VarEstimate> var_gamma;
    std::vector<double> ratio_to_sigma2;  // Var(Gamma_t) a_n^2/(n t^{3/2} sigma^2)
    std::vector<std::vector<double>> gamma_series;  // per replica
};

OccupationVarianceResult run_occupation_variance(const ScalingParams& p,
                                                 std::int64_t replicas,
                                                 std::uint64_t seed, int workers,
                                                 const std::vector<double>& times);

struct TiltedHydroResult {
    std::vector<double> times;
    std::vector<double> field_mean;
    std::vector<double> field_sem;
    std::vector<double> prediction;
    CompareRecord verdict;
    std::vector<std::vector<double>> field_series;  // per replica
};

TiltedHydroResult run_tilted_hydro(const ScalingParams& p, const ProfilePair& profile,
                                   const SeparableTestFunction& G,
                                   std::int64_t replicas, std::uint64_t seed,
                                   int workers, const std::vector<double>& times,
                                   double h_trunc_radius);

struct MartingaleCheckResult {
    MeanSem exp_log_mart;   // should be 1
    MeanSem exp_girsanov;   // should be 1
};

MartingaleCheckResult run_martingale_check(const ScalingParams& p,
                                           const SeparableTestFunction& H,
                                           const SpatialField& phi,
                                           std::int64_t replicas, std::uint64_t seed,
                                           int workers);

struct QnDiagnosticResult {
    MeanSem sup_abs_int_qn;  // sup over the grid of |int_0^t Q^n_s ds|
};

QnDiagnosticResult run_qn_diagnostic(const ScalingParams& p,
                                     const SeparableTestFunction& H,
                                     std::int64_t replicas, std::uint64_t seed,
                                     int workers, const std::vector<double>& grid);

struct VerifyRatesResult {
    VerifyIntegrals integrals;
    double kernel_sq_relerr_max = 0.0;      // against t^{3/2} at t in {0.5,1,2}
    double q_optimal_relerr_max = 0.0;      // Q(profile) vs alpha^2/(2 sigma^2 t^{3/2})
    double q_multi_relerr = 0.0;            // Q(minimizer) vs finite_dim_rate, k=2
    double path_rate_relerr_k1 = 0.0;       // minimize_path_rate vs finite_dim_rate
    double path_rate_relerr_k2 = 0.0;
    bool pass = false;
};

VerifyRatesResult run_verify_rates();

std::string build_id();

}  // namespace wasep
