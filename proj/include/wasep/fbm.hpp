#pragma once

#include <cstdint>
#include <vector>

#include "wasep/linalg.hpp"
#include "wasep/rng.hpp"

namespace wasep {

// int_0^1 (1-x)^{-1/2} x^{-3/4} dx  (= Beta(1/4,1/2)), by singularity-split
// quadrature.
double beta_quarter_half();

// Normalization c_K = sqrt(3 / (8 * Beta(1/4,1/2))).
double fbm_kernel_normalization();

// Volterra kernel of fBm with Hurst 3/4:
// K(t,s) = c_K s^{-1/4} int_s^t (u-s)^{-3/4} u^{1/4} du, 0 < s < t.
// The singular factor is removed by the substitution u = s + w^4.
double fbm_kernel(double t, double s);

// int_0^t K(t,s)^2 ds, which must equal t^{3/2}.
double fbm_kernel_sq_integral(double t, double tol = 1e-9);

// Covariance of fBm-3/4: (t^{3/2} + s^{3/2} - |t-s|^{3/2}) / 2.
double fbm_cov(double s, double t);

struct CovMatrix {
    std::vector<double> times;
    Matrix a;       // a(t_i, t_j)
    Matrix chol;    // lower factor, proof of positive definiteness
};

// Throws on non-increasing times or a factorization failure.
CovMatrix cov_matrix(const std::vector<double>& times);

// Midpoint discretization of int_0^t K(t,s) dB_s on `grid` (increasing,
// positive times): one underlying Brownian path per call, substeps uniform
// on [0, grid.back()]. Grid times must sit on substep boundaries.
struct FbmSampler {
    FbmSampler(std::vector<double> grid, int substeps_total);

    std::vector<double> sample(Rng& rng) const;

    std::vector<double> grid;
    double dt = 0.0;
    std::vector<std::vector<double>> rows;  // rows[g][j] = K(t_g, s_mid_j)
};

}  // namespace wasep
