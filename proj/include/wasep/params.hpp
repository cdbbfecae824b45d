#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wasep {

// All model constants. The lattice is the periodic torus with L_macro*n
// sites per dimension; a_n is realized as the power family n^theta.
struct ScalingParams {
    std::int64_t n = 32;     // scaling parameter
    int d = 1;               // dimension, 1..3
    double alpha = 0.0;      // asymmetry strength
    double beta = 1.0;       // asymmetry exponent
    double rho = 0.5;        // density in (0,1)
    double theta = 0.75;     // a_n = n^theta
    double T = 1.0;          // macroscopic horizon
    std::int64_t L_macro = 4;  // macroscopic torus side

    void validate() const;
};

double a_n(const ScalingParams& p);
double chi(double rho);
double drift_velocity(const ScalingParams& p);

// One strict inequality of the exponent window.
struct AssumptionCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    bool exponent_level_only = false;  // log factors ignored
    std::string note;
};

struct AssumptionReport {
    std::vector<AssumptionCheck> checks;
    bool all_pass = false;
    std::string summary() const;
};

// Pure predicate on (d, beta, theta): which strict exponent inequalities
// of the admissibility window hold. Log-factor refinements are flagged,
// not evaluated.
AssumptionReport validate_assumption(const ScalingParams& p);

// Plain-text key=value configuration file: n, d, alpha, beta, rho, theta,
// T, L_macro, seed, replicas. '#' starts a comment.
struct RunConfig {
    ScalingParams params;
    std::uint64_t seed = 1;
    std::int64_t replicas = 1;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

}  // namespace wasep
