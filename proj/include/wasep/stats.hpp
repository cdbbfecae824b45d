#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wasep {

struct MeanSem {
    double mean = 0.0;
    double sd = 0.0;
    double sem = 0.0;
    std::int64_t count = 0;
};

MeanSem mean_sem(const std::vector<double>& xs);

// sample variance with a normal-approximation standard error sqrt(2/(R-1)) var
struct VarEstimate {
    double var = 0.0;
    double sem = 0.0;
    std::int64_t count = 0;
};

VarEstimate variance_estimate(const std::vector<double>& xs);

// mean, variance, stderr and per-grid-time series of a replica ensemble
struct SummaryStats {
    std::int64_t replicas = 0;
    std::vector<double> grid;
    std::map<std::string, std::vector<double>> mean;
    std::map<std::string, std::vector<double>> variance;
    std::map<std::string, std::vector<double>> sem;
    std::map<std::string, double> scalars;
};

enum class CompareMode { ZScore, RelErr };

struct CompareRecord {
    std::vector<double> z;          // per-point z-scores (ZScore mode)
    std::vector<double> rel_err;    // per-point relative errors
    bool pass = false;
    CompareMode mode = CompareMode::ZScore;
    double tolerance = 3.0;
};

// Per-point verdict: all |z| <= tol (ZScore) or all rel errors <= tol (RelErr).
CompareRecord compare(const std::vector<double>& sim_mean,
                      const std::vector<double>& sim_sem,
                      const std::vector<double>& prediction, double tolerance,
                      CompareMode mode);

}  // namespace wasep
