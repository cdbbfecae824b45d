#pragma once

#include <functional>
#include <optional>

#include "wasep/martingale.hpp"
#include "wasep/sim.hpp"

namespace wasep {

struct MdpTilt {
    const TestFunction* H = nullptr;
    const SpatialField* phi = nullptr;
};

struct MdpEstimate {
    double scaled_log_prob = 0.0;  // (n^d / a_n^2) log p_hat
    double stderr_ = 0.0;          // delta method, same scale
    double p_hat = 0.0;
    std::int64_t hits = 0;
    std::int64_t replicas = 0;
    bool infinite = false;         // no hits: log prob is a -inf flag
};

// Monte Carlo estimate of the scaled log probability of a path event under
// the base dynamics. With a tilt, paths are drawn from the tilted dynamics
// started from the perturbed measure and reweighted by exp(-girsanov_weight).
MdpEstimate mdp_estimate(const std::function<bool(const PathRecord&)>& event,
                         const ScalingParams& p, std::optional<MdpTilt> tilt,
                         std::int64_t replicas, std::uint64_t seed,
                         int workers = 1);

// Counter-style derivation of a replica's private seed.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t replica);

}  // namespace wasep
