#pragma once

#include "wasep/sim.hpp"

namespace wasep {

enum class CompensatorMode { Auto, Generic, FastSeparable };

// Exact log M^n_T(H) evaluated pathwise on a recorded trajectory:
// F(T) - F(0) - int_0^T e^{-F} (d_s + L_n) e^F ds with
// F(s, eta) = (a_n^2/n^d) <mu^n_s, H_s>. The compensator is a finite sum over
// directed bonds meeting the support of H, integrated between jumps by a
// 3-point Gauss rule with one refinement; separable H with a static frame
// takes an exact moment-expansion path instead.
double log_martingale(const PathRecord& path, const TestFunction& H,
                      const ScalingParams& p,
                      CompensatorMode mode = CompensatorMode::Auto);

// log d nu^{n,phi}_rho / d nu_rho at a configuration (product densities).
double initial_log_density(const Configuration& c0, const SpatialField& phi,
                           const ScalingParams& p);

// log dP^n_{H,phi} / dP^n_rho on a base-dynamics path:
// log_martingale + the initial product-density term.
double girsanov_weight(const PathRecord& path, const TestFunction& H,
                       const SpatialField& phi, const ScalingParams& p);

}  // namespace wasep
