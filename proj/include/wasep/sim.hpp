#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wasep/lattice.hpp"
#include "wasep/testfn.hpp"

namespace wasep {

// One executed jump. dir = +-(axis+1): sign is the lattice direction,
// axis in 0..d-1. The move is site -> neighbor(site, axis, sign).
struct JumpEvent {
    double time = 0.0;
    std::int64_t site = 0;
    std::int8_t dir = 0;

    int axis() const { return (dir > 0 ? dir : -dir) - 1; }
    int sign() const { return dir > 0 ? 1 : -1; }
};

struct ObservableSeries {
    std::string name;
    std::vector<double> values;
};

struct PathRecord {
    Configuration initial;
    Configuration final_config;
    std::vector<JumpEvent> jumps;   // complete only when recording was on
    std::vector<double> grid;
    std::vector<ObservableSeries> series;
    double T = 0.0;
    std::int64_t accepted = 0;      // executed jumps (counted even if not recorded)
    std::int64_t attempts = 0;
    std::int64_t tilt_rejections = 0;  // occupancy-passing proposals thinned away
    std::int64_t jumps_up[3] = {0, 0, 0};
    std::int64_t jumps_down[3] = {0, 0, 0};
};

struct GridObserver {
    std::string name;
    std::function<double(double, const Configuration&)> eval;
};

struct SimOptions {
    std::vector<double> grid;  // sorted observation times in [0, T]
    std::vector<GridObserver> observers;
    bool record_jumps = false;
    std::function<void(const JumpEvent&)> on_jump;  // called after the move
};

// Exact trajectory of the base dynamics on [0, T] by uniformization:
// global Poisson clock, uniform directed-bond proposal, occupancy rejection.
PathRecord simulate(const ScalingParams& p, const Configuration& config0,
                    const SimOptions& opt, Rng& rng);
PathRecord simulate(const ScalingParams& p, const Configuration& config0,
                    const SimOptions& opt, std::uint64_t seed);

struct TiltAccumulator {
    double log_mart = 0.0;
    double last_update_time = 0.0;
};

struct TiltedOptions : SimOptions {
    // also evaluate log M_T(H) on the generated path (requires jump replay)
    bool accumulate_log_mart = false;
};

struct TiltedResult {
    PathRecord path;
    TiltAccumulator tilt;
};

// Trajectory of the tilted dynamics: time-dependent rates handled by
// thinning against the constant dominating rate
// base * exp{2 (a_n/n^d) ||grad H||_inf (1/n) (1 + o)}. Initial state is
// drawn from the perturbed product measure. Aborts (throws) if a proposed
// acceptance probability exceeds the dominating bound.
TiltedResult simulate_tilted(const ScalingParams& p, const TestFunction& H,
                             const SpatialField& phi, const TiltedOptions& opt,
                             std::uint64_t seed);

// Sup of |grad H| over support x [0,T], estimated on a dense grid.
double grad_sup_estimate(const TestFunction& H, double T);

// Little-endian binary jump log: f64 time, u64 site, i8 direction.
void write_jump_log(const PathRecord& path, const std::string& filename);

}  // namespace wasep
