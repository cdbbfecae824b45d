#pragma once

#include <vector>

#include "wasep/profiles.hpp"
#include "wasep/testfn.hpp"

namespace wasep {

// Limiting variance of the occupation time: 4 sqrt(2) chi(rho) / (3 sqrt(pi)).
double sigma_sq(double rho);

// Static part of the rate functional: chi/2 * ||phi||_{L2}^2 (quadrature).
double q0(const ProfilePair& p, double rho);

// Dynamic part: chi/2 * [H,H] with [H,G] = (1/d) sum_i int int dH dG (d=1).
double qdyn(const ProfilePair& p, double rho);

double inner_h1(const ProfilePair& h, const ProfilePair& g);

double rate_q(const ProfilePair& p, double rho);

// (1/(2 sigma^2)) alpha^T A^{-1} alpha at the fBm covariance matrix.
// Pairs may come unsorted; times must be distinct and positive.
double finite_dim_rate(std::vector<double> alpha, std::vector<double> times,
                       double rho);

struct IntegralCheck {
    double quadrature = 0.0;
    double closed_form = 0.0;
    double rel_err() const;
};

struct VerifyIntegrals {
    IntegralCheck cal1;       // int (int_0^T p_s dv)^2 dv
    IntegralCheck cal2;       // int_0^T int (int_0^{T-r} p'_s ds)^2 dv dr
    IntegralCheck cal3;       // cross integral at (t_i,t_j) = (T, 2T), alpha_j = 1
    double identity_lhs = 0;  // cal1 + cal2 closed forms
    double identity_rhs = 0;  // sigma^2 T^{3/2} / chi  (rho-free)
};

VerifyIntegrals verify_integrals(double T);

double cal1_closed(double T);
double cal2_closed(double T);

// Weak solution of the perturbed heat equation, evaluated pointwise by
// adaptive quadrature of the two convolution terms:
// mu(t,u) = chi (p_t * phi)(u) - chi int_0^t int p'_{t-s}(u-v) dH(s,v) dv ds.
double solve_mu(const ProfilePair& p, double rho, double t, double u);

// Convenience: mu via the component closed form when available, else solve_mu.
double mu_at(const ProfilePair& p, double rho, double t, double u);

// int_0^t mu(s, 0) ds, the constraint functional of the minimizers.
double constraint_integral(const ProfilePair& p, double rho, double t,
                           bool use_quadrature = false);

// |<mu_t, G_t> - chi<phi, G_0> - int <mu, (d_s + Lap/2d) G> - chi [H, G]_t|.
double weak_solution_residual(const ProfilePair& p, double rho,
                              const TestFunction& G, double t, int panels = 0);

}  // namespace wasep
