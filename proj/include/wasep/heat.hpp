#pragma once

#include <stdexcept>

namespace wasep {

// Transition density of standard d-dimensional Brownian motion,
// (2 pi t)^{-d/2} exp(-|u|^2 / 2t). Throws on t <= 0.
double heat_kernel(double t, const double* u, int d);
double heat_kernel_1d(double t, double u);

// d/du component: -(u_i/t) p_t(u)
double heat_kernel_grad_1d(double t, double u);

// G_t(v) = int_0^t p_s(v) ds in d=1; closed form 2t p_t(v) - |v| erfc(|v|/sqrt(2t)).
double time_integrated_kernel(double t, double v);

// Same object by quadrature of the defining integral (substitution s = w^2),
// kept as an independent route for verification.
double time_integrated_kernel_quad(double t, double v, double tol = 1e-11);

// int_0^u p'_s(v) ds = -sgn(v) erfc(|v|/sqrt(2u)) in d=1.
double time_integrated_kernel_grad(double u_time, double v);
double time_integrated_kernel_grad_quad(double u_time, double v, double tol = 1e-11);

}  // namespace wasep
