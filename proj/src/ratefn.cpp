#include "wasep/ratefn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wasep/fbm.hpp"
#include "wasep/heat.hpp"
#include "wasep/linalg.hpp"
#include "wasep/params.hpp"
#include "wasep/quad.hpp"

namespace wasep {

namespace {

constexpr double sqrt_pi = 1.7724538509055160272981674833411;

// adaptive integral over [a,b] split at interior points (kinks, kernel peaks)
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       std::vector<double> splits, const QuadOptions& opt) {
    splits.push_back(a);
    splits.push_back(b);
    std::sort(splits.begin(), splits.end());
    double total = 0.0;
    double prev = a;
    for (double x : splits) {
        if (x <= prev || x > b) continue;
        if (x - prev > 1e-300) total += integrate(f, prev, std::min(x, b), opt);
        prev = x;
    }
    if (prev < b) total += integrate(f, prev, b, opt);
    return total;
}

QuadOptions tol(double abs_t, double rel_t) {
    QuadOptions o;
    o.abs_tol = abs_t;
    o.rel_tol = rel_t;
    return o;
}

}  // namespace

double sigma_sq(double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("sigma_sq: rho in (0,1)");
    return 4.0 * std::sqrt(2.0) * chi(rho) / (3.0 * sqrt_pi);
}

double q0(const ProfilePair& p, double rho) {
    if (!p.phi) return 0.0;
    const double R = p.phi_radius;
    const auto f = [&](double v) {
        const double x = p.phi(v);
        return x * x;
    };
    const double norm2 = integrate_split(f, -R, R, {0.0}, tol(1e-11, 1e-9));
    return 0.5 * chi(rho) * norm2;
}

double inner_h1(const ProfilePair& h, const ProfilePair& g) {
    if (!h.has_h() || !g.has_h()) return 0.0;
    const double R = std::max(h.h_radius, g.h_radius);
    const double tend = std::min(h.t_end, g.t_end);  // integrand 0 past either
    std::vector<double> tsplits;
    for (const auto& c : h.comps) tsplits.push_back(c.t);
    for (const auto& c : g.comps) tsplits.push_back(c.t);
    const auto outer = [&](double r) {
        return integrate_split(
            [&](double v) { return h.hgrad(r, v) * g.hgrad(r, v); }, -R, R, {0.0},
            tol(1e-11, 1e-8));
    };
    return integrate_split(outer, 0.0, tend, tsplits, tol(1e-10, 1e-8));
}

double qdyn(const ProfilePair& p, double rho) {
    if (!p.has_h()) return 0.0;
    return 0.5 * chi(rho) * inner_h1(p, p);
}

double rate_q(const ProfilePair& p, double rho) {
    return q0(p, rho) + qdyn(p, rho);
}

double finite_dim_rate(std::vector<double> alpha, std::vector<double> times,
                       double rho) {
    if (alpha.size() != times.size() || alpha.empty())
        throw std::invalid_argument("finite_dim_rate: bad sizes");
    std::vector<std::size_t> idx(times.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
    std::vector<double> ts(times.size()), as(times.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        ts[i] = times[idx[i]];
        as[i] = alpha[idx[i]];
    }
    const CovMatrix cm = cov_matrix(ts);
    const std::vector<double> x = cholesky_solve(cm.chol, as);
    return dot(as, x) / (2.0 * sigma_sq(rho));
}

double cal1_closed(double T) {
    return 4.0 * (2.0 - std::sqrt(2.0)) * std::pow(T, 1.5) / (3.0 * sqrt_pi);
}

double cal2_closed(double T) {
    return 8.0 * (std::sqrt(2.0) - 1.0) * std::pow(T, 1.5) / (3.0 * sqrt_pi);
}

double IntegralCheck::rel_err() const {
    return std::abs(quadrature - closed_form) / std::abs(closed_form);
}

VerifyIntegrals verify_integrals(double T) {
    if (T <= 0.0) throw std::invalid_argument("verify_integrals: T must be > 0");
    VerifyIntegrals out;
    const double R = 8.0 * std::sqrt(T) + 1.0;

    // cal1: symmetric in v, inner time integral by quadrature
    out.cal1.quadrature =
        2.0 * integrate(
                  [&](double v) {
                      const double g = time_integrated_kernel_quad(T, v, 1e-12);
                      return g * g;
                  },
                  0.0, R, tol(1e-11, 1e-9));
    out.cal1.closed_form = cal1_closed(T);

    // cal2: r-integral substituted u = T - r = q^2
    const auto g2 = [&](double u) {
        return 2.0 * integrate(
                         [&](double v) {
                             const double g = time_integrated_kernel_grad_quad(u, v, 1e-12);
                             return g * g;
                         },
                         0.0, R, tol(1e-11, 1e-9));
    };
    out.cal2.quadrature = integrate([&](double q) { return 2.0 * q * g2(q * q); },
                                    0.0, std::sqrt(T), tol(1e-10, 1e-8));
    out.cal2.closed_form = cal2_closed(T);

    // one instance of the cross integral, (t_i, t_j) = (T, 2T), alpha_j = 1
    const double rho = 0.5;
    const ProfilePair pj = optimal_profile(2.0 * T, 1.0, rho);
    out.cal3.quadrature = constraint_integral(pj, rho, T, /*use_quadrature=*/true);
    out.cal3.closed_form = fbm_cov(T, 2.0 * T) / std::pow(2.0 * T, 1.5);

    out.identity_lhs = out.cal1.closed_form + out.cal2.closed_form;
    out.identity_rhs = 4.0 * std::sqrt(2.0) * std::pow(T, 1.5) / (3.0 * sqrt_pi);
    return out;
}

double solve_mu(const ProfilePair& p, double rho, double t, double u) {
    if (t < 0.0) throw std::invalid_argument("solve_mu: t < 0");
    const double ch = chi(rho);
    if (t == 0.0) return p.phi ? ch * p.phi(u) : 0.0;

    double term1 = 0.0;
    if (p.phi) {
        const double R = p.phi_radius;
        const double w = 8.0 * std::sqrt(t);
        term1 = ch * integrate_split(
                         [&](double v) { return heat_kernel_1d(t, u - v) * p.phi(v); },
                         -R, R, {0.0, u - w, u, u + w}, tol(1e-11, 1e-9));
    }

    double term2 = 0.0;
    if (p.has_h()) {
        const double R = p.h_radius;
        // tau = t - s = q^2; inner kernel peak has width ~ q around v = u
        const auto inner = [&](double q) {
            const double tau = q * q;
            const double s = t - tau;
            return integrate_split(
                [&](double v) {
                    return heat_kernel_grad_1d(tau, u - v) * p.hgrad(s, v);
                },
                -R, R, {0.0, u - 8.0 * q, u, u + 8.0 * q}, tol(1e-11, 1e-8));
        };
        term2 = -ch * integrate(
                          [&](double q) {
                              const double s = t - q * q;
                              if (s >= p.t_end) return 0.0;
                              return 2.0 * q * inner(q);
                          },
                          0.0, std::sqrt(t), tol(1e-10, 1e-8));
    }
    return term1 + term2;
}

double mu_at(const ProfilePair& p, double rho, double t, double u) {
    if (p.closed_form()) return profile_mu(p, t, u);
    return solve_mu(p, rho, t, u);
}

double constraint_integral(const ProfilePair& p, double rho, double t,
                           bool use_quadrature) {
    const auto mu0 = [&](double s) {
        return use_quadrature ? solve_mu(p, rho, s, 0.0) : mu_at(p, rho, s, 0.0);
    };
    // s = z^2 absorbs the sqrt cusp of mu(s,0) at s -> 0
    const QuadOptions o = use_quadrature ? tol(1e-8, 1e-6) : tol(1e-11, 1e-9);
    return integrate([&](double z) { return 2.0 * z * mu0(z * z); }, 0.0,
                     std::sqrt(t), o);
}

double weak_solution_residual(const ProfilePair& p, double rho,
                              const TestFunction& G, double t, int panels) {
    const double Rg = G.support_radius();
    const double ch = chi(rho);

    const auto space_int = [&](const std::function<double(double)>& f) {
        if (panels > 0)
            return integrate_panels(f, -Rg, 0.0, panels, 15) +
                   integrate_panels(f, 0.0, Rg, panels, 15);
        return integrate_split(f, -Rg, Rg, {0.0}, tol(1e-10, 1e-8));
    };
    const auto time_int = [&](const std::function<double(double)>& f, double t1) {
        if (panels > 0) return integrate_panels(f, 0.0, t1, panels, 15);
        std::vector<double> splits;
        for (const auto& c : p.comps) splits.push_back(c.t);
        return integrate_split(f, 0.0, t1, splits, tol(1e-10, 1e-8));
    };

    const double lhs =
        space_int([&](double u) { return mu_at(p, rho, t, u) * G.value(t, &u); });
    const double init =
        p.phi ? ch * space_int([&](double u) { return p.phi(u) * G.value(0.0, &u); })
              : 0.0;
    const double bulk = time_int(
        [&](double s) {
            return space_int([&](double u) {
                return mu_at(p, rho, s, u) *
                       (G.dt(s, &u) + 0.5 * G.laplacian(s, &u));
            });
        },
        t);
    double hterm = 0.0;
    if (p.has_h()) {
        hterm = ch * time_int(
                         [&](double s) {
                             if (s >= p.t_end) return 0.0;
                             return space_int([&](double u) {
                                 double g1[1];
                                 G.grad(s, &u, g1);
                                 return g1[0] * p.hgrad(s, u);
                             });
                         },
                         std::min(t, p.t_end));
    }
    return std::abs(lhs - init - bulk - hterm);
}

}  // namespace wasep
