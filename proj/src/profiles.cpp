#include "wasep/profiles.hpp"

#include <cmath>
#include <stdexcept>

#include "wasep/fbm.hpp"
#include "wasep/heat.hpp"
#include "wasep/linalg.hpp"
#include "wasep/params.hpp"

namespace wasep {

namespace {
constexpr double sqrt_pi = 1.7724538509055160272981674833411;

double ierfc(double z) {
    return std::exp(-z * z) / sqrt_pi - z * std::erfc(z);
}
}  // namespace

double profile_c0(double t, double alpha, double rho) {
    if (t <= 0.0) throw std::invalid_argument("profile_c0: t must be > 0");
    return 3.0 * sqrt_pi * alpha /
           (4.0 * std::sqrt(2.0) * std::pow(t, 1.5) * chi(rho));
}

namespace {

ProfilePair from_components(std::vector<ProfileComponent> comps, double rho,
                            std::vector<double> times, std::vector<double> alphas,
                            double radius) {
    ProfilePair p;
    p.comps = std::move(comps);
    p.rho = rho;
    p.times = std::move(times);
    p.alphas = std::move(alphas);
    double tmax = 0.0;
    for (const auto& c : p.comps) tmax = std::max(tmax, c.t);
    p.t_end = tmax;
    if (radius <= 0.0) radius = 8.0 * std::sqrt(tmax);
    p.phi_radius = p.h_radius = radius;
    auto comps_copy = p.comps;
    p.phi = [comps_copy, radius](double v) {
        if (std::abs(v) > radius) return 0.0;
        double s = 0.0;
        for (const auto& c : comps_copy) s += c.c0 * time_integrated_kernel(c.t, v);
        return s;
    };
    p.hgrad = [comps_copy, radius](double r, double v) {
        if (std::abs(v) > radius) return 0.0;
        double s = 0.0;
        for (const auto& c : comps_copy)
            if (r < c.t) s += c.c0 * time_integrated_kernel_grad(c.t - r, v);
        return s;
    };
    return p;
}

}  // namespace

ProfilePair optimal_profile(double t, double alpha, double rho, double radius) {
    return from_components({{profile_c0(t, alpha, rho), t}}, rho, {t}, {alpha},
                           radius);
}

ProfilePair minimizer_multi(const std::vector<double>& alpha,
                            const std::vector<double>& times, double rho,
                            double radius) {
    if (alpha.size() != times.size() || alpha.empty())
        throw std::invalid_argument("minimizer_multi: bad sizes");
    const CovMatrix cm = cov_matrix(times);  // validates distinct increasing times
    const std::vector<double> ainv_alpha = cholesky_solve(cm.chol, alpha);
    std::vector<ProfileComponent> comps;
    for (std::size_t j = 0; j < times.size(); ++j) {
        const double beta_j = std::pow(times[j], 1.5) * ainv_alpha[j];
        comps.push_back({beta_j * profile_c0(times[j], 1.0, rho), times[j]});
    }
    return from_components(std::move(comps), rho, times, alpha, radius);
}

double profile_mu(const ProfilePair& p, double t, double u) {
    if (!p.closed_form())
        throw std::invalid_argument("profile_mu: profile has no component form");
    double s = 0.0;
    for (const auto& c : p.comps) {
        if (t <= c.t)
            s += c.c0 * (time_integrated_kernel(t, u) + time_integrated_kernel(c.t - t, u));
        else
            s += c.c0 * (time_integrated_kernel(t, u) - time_integrated_kernel(t - c.t, u));
    }
    return chi(p.rho) * s;
}

double profile_h_value(const ProfilePair& p, double r, double v) {
    double s = 0.0;
    const double av = std::abs(v);
    for (const auto& c : p.comps) {
        if (r >= c.t) continue;
        const double su = std::sqrt(2.0 * (c.t - r));
        s += c.c0 * su * ierfc(av / su);
    }
    return s;
}

double profile_h_dt(const ProfilePair& p, double r, double v) {
    double s = 0.0;
    for (const auto& c : p.comps)
        if (r < c.t) s -= c.c0 * heat_kernel_1d(c.t - r, v);
    return s;
}

double profile_h_lap_ae(const ProfilePair& p, double r, double v) {
    double s = 0.0;
    for (const auto& c : p.comps)
        if (r < c.t) s += 2.0 * c.c0 * heat_kernel_1d(c.t - r, v);
    return s;
}

SpatialField ProfilePair::phi_field() const {
    SpatialField f;
    f.dim = 1;
    f.radius = phi_radius;
    auto g = phi;
    f.f = [g](const double* u) { return g(u[0]); };
    return f;
}

ProfileHField::ProfileHField(ProfilePair p, double trunc_radius)
    : p_(std::move(p)), radius_(trunc_radius) {
    if (!p_.closed_form())
        throw std::invalid_argument("ProfileHField: needs a component profile");
}

double ProfileHField::value(double t, const double* u) const {
    if (std::abs(u[0]) > radius_ || t >= p_.t_end) return 0.0;
    return profile_h_value(p_, t, u[0]);
}

void ProfileHField::grad(double t, const double* u, double* g) const {
    if (std::abs(u[0]) > radius_ || t >= p_.t_end) {
        g[0] = 0.0;
        return;
    }
    g[0] = p_.hgrad(t, u[0]);
}

double ProfileHField::laplacian(double t, const double* u) const {
    if (std::abs(u[0]) > radius_ || t >= p_.t_end) return 0.0;
    return profile_h_lap_ae(p_, t, u[0]);
}

double ProfileHField::dt(double t, const double* u) const {
    if (std::abs(u[0]) > radius_ || t >= p_.t_end) return 0.0;
    return profile_h_dt(p_, t, u[0]);
}

}  // namespace wasep
