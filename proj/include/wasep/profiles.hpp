#pragma once

#include <functional>
#include <vector>

#include "wasep/testfn.hpp"

namespace wasep {

// c0(t, alpha) = 3 sqrt(pi) alpha / (4 sqrt(2) t^{3/2} chi(rho)).
double profile_c0(double t, double alpha, double rho);

// One heat-kernel component of a minimizer: weight * the unit family at
// horizon t. phi_component(v) = c0 G_t(v), dH_component(r,v) =
// -c0 sgn(v) erfc(|v|/sqrt(2(t-r))) for r < t.
struct ProfileComponent {
    double c0 = 0.0;  // effective weight (already includes beta and alpha)
    double t = 0.0;
};

// A (phi, H) pair parameterizing rate-function minimizers and hydrodynamic
// solutions, d=1. Closed-form component families carry `comps`; generic
// pairs carry only the callables.
struct ProfilePair {
    std::function<double(double)> phi;              // initial perturbation
    double phi_radius = 0.0;
    std::function<double(double, double)> hgrad;    // dH/dv (r, v); 0 for r >= t_end
    double h_radius = 0.0;
    double t_end = 0.0;

    std::vector<ProfileComponent> comps;            // set for c0-families
    double rho = 0.5;
    std::vector<double> times;
    std::vector<double> alphas;

    bool has_h() const { return t_end > 0.0 && bool(hgrad); }
    bool closed_form() const { return !comps.empty(); }

    SpatialField phi_field() const;                 // for sample_perturbed
};

// Variational minimizer for a single constraint int_0^t mu(s,0) ds = alpha.
// `radius` truncates the (Gaussian-tailed) profile support; default 8 sqrt(t).
ProfilePair optimal_profile(double t, double alpha, double rho,
                            double radius = -1.0);

// Multi-time minimizer: coefficients beta = D^{-1} A^{-1} alpha over the
// unit families at each constraint time.
ProfilePair minimizer_multi(const std::vector<double>& alpha,
                            const std::vector<double>& times, double rho,
                            double radius = -1.0);

// Hydrodynamic solution induced by a closed-form profile:
// mu(t,u) = chi * sum_i c0_i * [G_t(u) + G_{t_i - t}(u)]  (t <= t_i)
//           chi * sum_i c0_i * [G_t(u) - G_{t - t_i}(u)]  (t >  t_i).
double profile_mu(const ProfilePair& p, double t, double u);

// H itself (and its time derivative), needed by the tilted simulator.
double profile_h_value(const ProfilePair& p, double r, double v);
double profile_h_dt(const ProfilePair& p, double r, double v);
double profile_h_lap_ae(const ProfilePair& p, double r, double v);

// TestFunction adapter over the H part of a closed-form profile.
// laplacian() returns the absolutely continuous part only; the gradient has
// a jump at v=0 (its delta at the origin is the point of the construction).
class ProfileHField : public TestFunction {
public:
    ProfileHField(ProfilePair p, double trunc_radius);

    int dim() const override { return 1; }
    double value(double t, const double* u) const override;
    void grad(double t, const double* u, double* g) const override;
    double laplacian(double t, const double* u) const override;
    double dt(double t, const double* u) const override;
    double support_radius() const override { return radius_; }

    const ProfilePair& profile() const { return p_; }

private:
    ProfilePair p_;
    double radius_;
};

}  // namespace wasep
