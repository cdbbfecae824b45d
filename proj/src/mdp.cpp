#include "wasep/mdp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wasep/parallel.hpp"

namespace wasep {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t replica) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (replica + 0x51);
    return splitmix64(x);
}

MdpEstimate mdp_estimate(const std::function<bool(const PathRecord&)>& event,
                         const ScalingParams& p, std::optional<MdpTilt> tilt,
                         std::int64_t replicas, std::uint64_t seed, int workers) {
    p.validate();
    if (replicas < 100) throw std::invalid_argument("mdp_estimate: replicas < 100");
    const bool tilted = tilt.has_value() && tilt->H;
    std::vector<double> sample(std::size_t(replicas), 0.0);
    std::vector<std::uint8_t> hit(std::size_t(replicas), 0);

    parallel_for(replicas, workers, [&](std::int64_t r) {
        const std::uint64_t rs = sub_seed(seed, std::uint64_t(r));
        if (!tilted) {
            const Configuration c0 = sample_bernoulli(p, rs);
            SimOptions opt;
            const PathRecord path = simulate(p, c0, opt, rs);
            const bool in = event(path);
            hit[std::size_t(r)] = in;
            sample[std::size_t(r)] = in ? 1.0 : 0.0;
        } else {
            static const SpatialField no_phi{};
            TiltedOptions opt;
            opt.accumulate_log_mart = true;
            const SpatialField& phi = tilt->phi ? *tilt->phi : no_phi;
            TiltedResult res = simulate_tilted(p, *tilt->H, phi, opt, rs);
            const bool in = event(res.path);
            hit[std::size_t(r)] = in;
            if (in) {
                const double w =
                    res.tilt.log_mart + initial_log_density(res.path.initial, phi, p);
                sample[std::size_t(r)] = std::exp(-w);
            }
        }
    });

    MdpEstimate out;
    out.replicas = replicas;
    for (std::int64_t r = 0; r < replicas; ++r) out.hits += hit[std::size_t(r)];
    double mean = 0.0;
    for (double x : sample) mean += x;
    mean /= double(replicas);
    double var = 0.0;
    for (double x : sample) var += (x - mean) * (x - mean);
    var /= double(replicas - 1);
    out.p_hat = mean;

    const double scale = std::pow(double(p.n), p.d) / (a_n(p) * a_n(p));
    if (out.hits == 0) {
        out.infinite = true;
        out.scaled_log_prob = -std::numeric_limits<double>::infinity();
        out.stderr_ = std::numeric_limits<double>::infinity();
        return out;
    }
    out.scaled_log_prob = scale * std::log(mean);
    out.stderr_ = scale * std::sqrt(var / double(replicas)) / mean;
    return out;
}

}  // namespace wasep
