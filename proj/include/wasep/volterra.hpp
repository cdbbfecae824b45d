#pragma once

#include <vector>

#include "wasep/linalg.hpp"

namespace wasep {

// Midpoint collocation matrix M_ij = K(t_i, s_j) ds of the first-kind
// Volterra system gamma(t_i) = int_0^{t_i} K(t_i,s) gammadot(s) ds on a
// uniform grid t_i = i*ds, s_j = (j-1/2)*ds. Lower triangular.
Matrix volterra_collocation(double T, int m);

struct IPathResult {
    double value = 0.0;          // (1/2) int gammadot^2, or +inf flag
    bool infinite = false;       // regularized residual exceeded threshold
    double residual = 0.0;       // relative residual of the regularized solve
    std::vector<double> gammadot;
};

struct IPathOptions {
    double tikhonov_scale = 1e-8;     // lambda = scale * ||M||^2
    double residual_threshold = 1e-4; // relative; numerical proxy for gamma not in H
};

// gamma sampled at t_i = i*T/m, i=1..m (gamma(0)=0 implicit, not passed).
// Solves the Tikhonov-regularized collocation system for gammadot.
IPathResult i_path(const std::vector<double>& gamma, double T,
                   const IPathOptions& opt = {});

// Minimum of (1/2) sum gammadot_j^2 ds subject to
// sum_j K(t_i, s_j) gammadot_j ds = alpha_i, divided by sigma_sq.
// Constraint times must be grid points of the uniform m-grid on [0, T].
double minimize_path_rate(const std::vector<double>& alpha,
                          const std::vector<double>& times, double rho, double T,
                          int m);

}  // namespace wasep
