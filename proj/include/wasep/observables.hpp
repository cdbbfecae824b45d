#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wasep/sim.hpp"
#include "wasep/testfn.hpp"

namespace wasep {

struct FieldSample {
    double time = 0.0;
    double value = 0.0;
};

// <mu^n_t, H> = (1/a_n) sum_x (eta_x - rho) H((x - v_n t m)/n), the sum
// restricted to the support of H in the drift frame.
double fluctuation_field(const Configuration& config, const TestFunction& H,
                         double t, const ScalingParams& p);

// Local function of the configuration through the window eta_0..eta_{w-1}
// (d=1). Bit j of the argument is eta_j.
struct LocalFunction {
    int window = 1;
    std::function<double(std::uint32_t)> eval;

    static LocalFunction origin_occupancy();
};

// Exact E_{nu_rho}[f] by enumeration over the 2^w window configurations.
double ftilde(const LocalFunction& f, double rho);

struct OccupationTrajectory {
    std::vector<double> grid;
    std::vector<double> gamma;   // (n/a_n) int_0^t {f(eta(s)) - ftilde} ds
    double final_value = 0.0;    // at t = T
};

// Exact integration from the jump log: the integrand is constant between
// jumps, so the observer grid only places checkpoints.
OccupationTrajectory occupation_time(const PathRecord& path, const LocalFunction& f,
                                     const ScalingParams& p,
                                     const std::vector<double>& grid);

// Q^n_s(H): quadratic fluctuation field with the gradient of H in the drift
// frame; `discrete_gradient` switches to n[H(u_{x+e_i}) - H(u_x)].
double q_n_observable(const Configuration& config, const TestFunction& H,
                      double s, const ScalingParams& p,
                      bool discrete_gradient = false);

// Exact int_0^t Q^n_s ds at grid checkpoints, by jump replay. Requires a
// static frame (v_n = 0) and time-constant H.
std::vector<double> integrate_qn(const PathRecord& path, const TestFunction& H,
                                 const ScalingParams& p,
                                 const std::vector<double>& grid);

// Exact product-measure relative entropy H(nu^{n,phi}_rho | nu_rho).
double relative_entropy_initial(const SpatialField& phi, const ScalingParams& p);

}  // namespace wasep
