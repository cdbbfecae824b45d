#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wasep/fbm.hpp"
#include "wasep/heat.hpp"
#include "wasep/profiles.hpp"
#include "wasep/quad.hpp"
#include "wasep/ratefn.hpp"
#include "wasep/rng.hpp"
#include "wasep/volterra.hpp"

using namespace wasep;

TEST_CASE("gauss rules integrate polynomials exactly") {
    const auto f = [](double x) { return 5.0 * x * x * x * x - 2.0 * x + 1.0; };
    // reference: int_{-1}^{2} = [x^5 - x^2 + x] = (32-4+2) - (-1-1-1) = 33
    CHECK(gauss(f, -1.0, 2.0, 15) == doctest::Approx(33.0).epsilon(1e-13));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846)
          == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("heat kernel values and normalization") {
    double u0 = 0.0;
    CHECK(heat_kernel(1.0, &u0, 1) == doctest::Approx(0.398942).epsilon(1e-6));
    CHECK_THROWS(heat_kernel(0.0, &u0, 1));

    for (int d : {1, 2}) {
        const double t = 0.7;
        double mass;
        if (d == 1) {
            mass = integrate([&](double x) { return heat_kernel(t, &x, 1); }, -12.0, 12.0);
        } else {
            mass = integrate(
                [&](double x) {
                    return integrate(
                        [&](double y) {
                            double u[2] = {x, y};
                            return heat_kernel(t, u, 2);
                        },
                        -10.0, 10.0, QuadOptions{1e-11, 1e-10, 48, 15});
                },
                -10.0, 10.0, QuadOptions{1e-9, 1e-8, 48, 15});
        }
        CHECK(mass == doctest::Approx(1.0).epsilon(d == 1 ? 1e-8 : 1e-6));
    }

    // semigroup, d=1
    const double s = 0.4, t = 0.9, u = 0.6;
    const double conv = integrate(
        [&](double v) { return heat_kernel_1d(s, u - v) * heat_kernel_1d(t, v); },
        -14.0, 14.0);
    CHECK(conv == doctest::Approx(heat_kernel_1d(s + t, u)).epsilon(1e-6));
}

TEST_CASE("time-integrated kernel: closed form vs quadrature") {
    Rng rng(4, 0);
    for (int k = 0; k < 20; ++k) {
        const double t = 0.05 + 2.0 * rng.uniform();
        const double v = (rng.uniform() - 0.5) * 6.0;
        CHECK(time_integrated_kernel(t, v) ==
              doctest::Approx(time_integrated_kernel_quad(t, v)).epsilon(1e-9));
        const double g_closed = time_integrated_kernel_grad(t, v);
        const double g_quad = time_integrated_kernel_grad_quad(t, v);
        CHECK(g_closed == doctest::Approx(g_quad).epsilon(1e-8));
    }
}

TEST_CASE("beta(1/4,1/2) and kernel normalization") {
    const double b = beta_quarter_half();
    const double by_gamma =
        std::exp(std::lgamma(0.25) + std::lgamma(0.5) - std::lgamma(0.75));
    CHECK(b == doctest::Approx(by_gamma).epsilon(1e-11));
    CHECK(b == doctest::Approx(5.24412).epsilon(1e-5));
    CHECK(fbm_kernel_normalization() == doctest::Approx(0.267412).epsilon(1e-5));
}

TEST_CASE("fbm covariance") {
    CHECK(fbm_cov(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(fbm_cov(2.0, 2.0) == doctest::Approx(std::pow(2.0, 1.5)));
    CHECK(fbm_cov(1.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(fbm_cov(0.0, 3.0) == doctest::Approx(0.0));
    CHECK_THROWS(cov_matrix({1.0, 1.0}));
    CHECK_THROWS(cov_matrix({2.0, 1.0}));
    // positive definiteness via factorization on random increasing times
    Rng rng(9, 0);
    for (int k = 0; k < 10; ++k) {
        std::vector<double> ts;
        double t = 0.0;
        for (int i = 0; i < 5; ++i) {
            t += 0.05 + rng.uniform();
            ts.push_back(t);
        }
        CHECK_NOTHROW((void)cov_matrix(ts));
    }
}

TEST_CASE("fbm kernel variance identity") {
    CHECK_THROWS((void)fbm_kernel(1.0, 1.0));
    CHECK_THROWS((void)fbm_kernel(1.0, 1.5));
    for (double t : {0.5, 1.0, 2.0}) {
        const double q = fbm_kernel_sq_integral(t);
        CHECK(q == doctest::Approx(std::pow(t, 1.5)).epsilon(1e-4));
    }
}

TEST_CASE("fbm sampler covariance") {
    FbmSampler sampler({0.5, 1.0}, 2048);
    Rng rng(17, 0);
    const int N = 4000;
    double c01 = 0.0, v0 = 0.0, v1 = 0.0;
    for (int i = 0; i < N; ++i) {
        const auto x = sampler.sample(rng);
        c01 += x[0] * x[1];
        v0 += x[0] * x[0];
        v1 += x[1] * x[1];
    }
    c01 /= N;
    v0 /= N;
    v1 /= N;
    const double se_c = std::sqrt((fbm_cov(0.5, 0.5) * fbm_cov(1.0, 1.0) +
                                   fbm_cov(0.5, 1.0) * fbm_cov(0.5, 1.0)) /
                                  N);
    CHECK(std::abs(c01 - fbm_cov(0.5, 1.0)) < 3.0 * se_c + 0.01);
    CHECK(std::abs(v0 - fbm_cov(0.5, 0.5)) < 3.0 * std::sqrt(2.0 / N) * fbm_cov(0.5, 0.5) + 0.01);
    CHECK(std::abs(v1 - 1.0) < 3.0 * std::sqrt(2.0 / N) + 0.015);
}

namespace {
// forward map gamma(t_i) = int_0^{t_i} K(t_i, s) gdot(s) ds by independent
// adaptive quadrature (z^2 substitution at the singular left end)
std::vector<double> forward_map(const std::function<double(double)>& gdot, double T,
                                int m) {
    std::vector<double> gamma(std::size_t(m), 0.0);
    for (int i = 1; i <= m; ++i) {
        const double ti = T * i / m;
        gamma[std::size_t(i - 1)] = integrate(
            [&](double z) {
                const double s = z * z;
                if (s <= 0.0 || s >= ti) return 0.0;
                return 2.0 * z * fbm_kernel(ti, s) * gdot(s);
            },
            0.0, std::sqrt(ti), QuadOptions{1e-10, 1e-8, 48, 15});
    }
    return gamma;
}
}  // namespace

TEST_CASE("i_path round trip and scaling") {
    const double T = 1.0;
    const int m = 256;
    CHECK(i_path(std::vector<double>(m, 0.0), T).value == doctest::Approx(0.0));

    const auto gamma = forward_map([](double) { return 1.0; }, T, m);
    const IPathResult res = i_path(gamma, T);
    CHECK_FALSE(res.infinite);
    CHECK(std::abs(res.value - T / 2.0) / (T / 2.0) < 0.02);

    // quadratic scaling is exact for the linear solver
    for (double c : {2.0, -1.0}) {
        std::vector<double> scaled = gamma;
        for (double& x : scaled) x *= c;
        const IPathResult rs = i_path(scaled, T);
        CHECK(rs.value == doctest::Approx(c * c * res.value).epsilon(1e-8));
    }

    CHECK_THROWS((void)i_path(std::vector<double>(32, 0.0), T));  // too coarse

    // a generic smooth derivative round-trips too
    const auto gdot = [](double s) { return 1.0 + 0.5 * std::sin(3.0 * s); };
    const auto g2 = forward_map(gdot, T, m);
    const double target = 0.5 * integrate([&](double s) { return gdot(s) * gdot(s); },
                                          0.0, T);
    const IPathResult r2 = i_path(g2, T);
    CHECK_FALSE(r2.infinite);
    CHECK(std::abs(r2.value - target) / target < 0.02);
}

TEST_CASE("i_path flags rough paths") {
    // white noise is not of the form int K gdot with square-integrable gdot
    const int m = 256;
    Rng rng(23, 0);
    std::vector<double> gamma(std::size_t(m), 0.0);
    for (double& x : gamma) x = rng.gaussian();
    const IPathResult res = i_path(gamma, 1.0);
    CHECK(res.infinite);
    CHECK(std::isinf(res.value));
}

TEST_CASE("constrained path rate matches the quadratic form") {
    const double k1 = minimize_path_rate({1.0}, {1.0}, 0.5, 1.0, 256);
    const double f1 = finite_dim_rate({1.0}, {1.0}, 0.5);
    CHECK(f1 == doctest::Approx(1.879971).epsilon(1e-5));
    CHECK(std::abs(k1 - f1) / f1 < 0.02);

    const double k2 = minimize_path_rate({1.0, 1.0}, {1.0, 2.0}, 0.5, 2.0, 256);
    const double f2 = finite_dim_rate({1.0, 1.0}, {1.0, 2.0}, 0.5);
    CHECK(std::abs(k2 - f2) / f2 < 0.02);

    CHECK(minimize_path_rate({0.0, 0.0}, {1.0, 2.0}, 0.5, 2.0, 128) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("finite dimensional rate properties") {
    CHECK(finite_dim_rate({0.0, 0.0}, {0.5, 1.5}, 0.3) == doctest::Approx(0.0));
    // relabeling invariance
    const double a = finite_dim_rate({0.4, -0.7, 0.2}, {0.3, 1.1, 2.2}, 0.4);
    const double b = finite_dim_rate({-0.7, 0.2, 0.4}, {1.1, 2.2, 0.3}, 0.4);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
    // adding a constraint can only raise the infimum
    Rng rng(31, 0);
    for (int k = 0; k < 5; ++k) {
        const double t1 = 0.4 + rng.uniform(), t2 = t1 + 0.3 + rng.uniform();
        const double a1 = rng.uniform() * 2.0 - 1.0, a2 = rng.uniform() * 2.0 - 1.0;
        const double joint = finite_dim_rate({a1, a2}, {t1, t2}, 0.5);
        CHECK(joint >= finite_dim_rate({a1}, {t1}, 0.5) - 1e-12);
        CHECK(joint >= finite_dim_rate({a2}, {t2}, 0.5) - 1e-12);
    }
    CHECK_THROWS((void)finite_dim_rate({1.0, 1.0}, {1.0, 1.0}, 0.5));
}

TEST_CASE("sigma squared") {
    CHECK(sigma_sq(0.5) == doctest::Approx(0.265963).epsilon(1e-5));
    CHECK(sigma_sq(0.25) == doctest::Approx(sigma_sq(0.75)).epsilon(1e-14));
    CHECK(sigma_sq(1e-9) < 1e-8);
}

TEST_CASE("verify_integrals closed forms") {
    const VerifyIntegrals v = verify_integrals(1.0);
    CHECK(v.cal1.closed_form == doctest::Approx(0.4406603).epsilon(1e-6));
    CHECK(v.cal2.closed_form == doctest::Approx(0.6231878).epsilon(1e-6));
    CHECK(v.cal1.rel_err() <= 1e-6);
    CHECK(v.cal2.rel_err() <= 1e-6);
    CHECK(std::abs(v.identity_lhs - v.identity_rhs) <= 1e-10);
    CHECK(v.cal3.closed_form == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(v.cal3.quadrature - v.cal3.closed_form) <= 2e-4);
}

TEST_CASE("optimal profile: rate, c0 and constraint") {
    const double rho = 0.4;
    const double s2 = sigma_sq(rho);

    // c0 formula spot check at (t, alpha) = (1, 0.5), rho = 0.5
    CHECK(profile_c0(1.0, 0.5, 0.5) ==
          doctest::Approx(3.0 * std::sqrt(3.14159265358979323846) /
                          (4.0 * std::sqrt(2.0)) * 2.0)
              .epsilon(1e-12));

    const ProfilePair p = optimal_profile(1.0, 1.0, rho);
    const double q = rate_q(p, rho);
    CHECK(std::abs(q - 1.0 / (2.0 * s2)) / (1.0 / (2.0 * s2)) < 1e-4);

    // alpha = 0 gives the zero profile
    const ProfilePair z = optimal_profile(1.0, 0.0, rho);
    CHECK(z.phi(0.2) == doctest::Approx(0.0));
    CHECK(rate_q(z, rho) == doctest::Approx(0.0).epsilon(1e-14));

    // constraint integral, closed-form route
    CHECK(constraint_integral(p, rho, 1.0) == doctest::Approx(1.0).epsilon(1e-6));

    // negative alpha
    const ProfilePair pm = optimal_profile(2.0, -1.0, rho);
    const double qm = rate_q(pm, rho);
    const double target = 1.0 / (2.0 * s2 * std::pow(2.0, 1.5));
    CHECK(std::abs(qm - target) / target < 1e-4);
}

TEST_CASE("solve_mu agrees with the closed-form hydrodynamic solution") {
    const double rho = 0.5;
    const ProfilePair p = optimal_profile(1.0, 0.5, rho);
    for (auto [t, u] : std::vector<std::pair<double, double>>{
             {0.25, 0.0}, {0.5, 0.3}, {0.8, -1.2}, {1.0, 0.0}}) {
        const double closed = profile_mu(p, t, u);
        const double quad = solve_mu(p, rho, t, u);
        CHECK(quad == doctest::Approx(closed).epsilon(2e-6));
    }
    // t = 0 reduces to chi * phi
    CHECK(solve_mu(p, rho, 0.0, 0.4) == doctest::Approx(chi(rho) * p.phi(0.4)));
}

TEST_CASE("solve_mu heat evolution of a gaussian bump, H = 0") {
    const double rho = 0.3;
    const double s0 = 0.35;
    ProfilePair p;
    p.rho = rho;
    p.phi_radius = 8.0;
    p.phi = [s0](double v) { return std::exp(-v * v / (2.0 * s0)); };
    for (auto [t, u] : std::vector<std::pair<double, double>>{{0.4, 0.0}, {1.0, 0.7}}) {
        const double target = chi(rho) * std::sqrt(s0 / (s0 + t)) *
                              std::exp(-u * u / (2.0 * (s0 + t)));
        CHECK(solve_mu(p, rho, t, u) == doctest::Approx(target).epsilon(1e-6));
    }
}

TEST_CASE("constraint integral via quadrature route") {
    const double rho = 0.5;
    const ProfilePair p = optimal_profile(1.0, 0.5, rho);
    const double c = constraint_integral(p, rho, 1.0, /*use_quadrature=*/true);
    CHECK(c == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("cross integrals of component solutions (cal 3)") {
    const double rho = 0.45;
    // int_0^{t_i} mu^{t_j, a_j}(s, 0) ds = a_j a(t_i, t_j) / t_j^{3/2}
    for (auto [ti, tj, aj] : std::vector<std::array<double, 3>>{
             {1.0, 2.0, 1.0}, {2.0, 1.0, 0.7}, {0.5, 1.0, -0.4}}) {
        const ProfilePair pj = optimal_profile(tj, aj, rho);
        const double lhs = constraint_integral(pj, rho, ti);
        const double rhs = aj * fbm_cov(ti, tj) / std::pow(tj, 1.5);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
}

TEST_CASE("multi-time minimizer") {
    const double rho = 0.5;
    const std::vector<double> times = {1.0, 2.0};
    const std::vector<double> alpha = {1.0, 1.0};

    // k=1 reduces exactly to the one-constraint profile
    const ProfilePair single = minimizer_multi({0.7}, {1.3}, rho);
    const ProfilePair direct = optimal_profile(1.3, 0.7, rho);
    REQUIRE(single.comps.size() == 1);
    CHECK(single.comps[0].c0 == doctest::Approx(direct.comps[0].c0).epsilon(1e-12));

    const ProfilePair multi = minimizer_multi(alpha, times, rho);
    // all constraints hold
    for (std::size_t i = 0; i < times.size(); ++i)
        CHECK(constraint_integral(multi, rho, times[i]) ==
              doctest::Approx(alpha[i]).epsilon(1e-6));
    // and the attained rate equals the quadratic form
    const double q = rate_q(multi, rho);
    const double fd = finite_dim_rate(alpha, times, rho);
    CHECK(std::abs(q - fd) / fd < 1e-3);
}

namespace {
ProfilePair combine(const std::vector<ProfilePair>& ps, const std::vector<double>& w,
                    double rho) {
    ProfilePair out;
    out.rho = rho;
    double radius = 0.0, tend = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (const auto& c : ps[i].comps) {
            out.comps.push_back({w[i] * c.c0, c.t});
            radius = std::max(radius, ps[i].phi_radius);
            tend = std::max(tend, c.t);
        }
    out.phi_radius = out.h_radius = radius;
    out.t_end = tend;
    auto comps = out.comps;
    out.phi = [comps](double v) {
        double s = 0.0;
        for (const auto& c : comps) s += c.c0 * time_integrated_kernel(c.t, v);
        return s;
    };
    out.hgrad = [comps](double r, double v) {
        double s = 0.0;
        for (const auto& c : comps)
            if (r < c.t) s += c.c0 * time_integrated_kernel_grad(c.t - r, v);
        return s;
    };
    return out;
}

double l2_inner_phi(const ProfilePair& a, const ProfilePair& b) {
    const double R = std::max(a.phi_radius, b.phi_radius);
    return integrate([&](double v) { return a.phi(v) * b.phi(v); }, -R, R,
                     QuadOptions{1e-11, 1e-9, 48, 15});
}
}  // namespace

TEST_CASE("inner product symmetry and bilinearity") {
    const double rho = 0.5;
    const ProfilePair p1 = optimal_profile(0.8, 1.0, rho);
    const ProfilePair p2 = optimal_profile(1.4, 1.0, rho);
    const ProfilePair p3 = optimal_profile(2.0, 1.0, rho);
    CHECK(inner_h1(p1, p2) == doctest::Approx(inner_h1(p2, p1)).epsilon(1e-10));
    const double a = 0.6, b = -1.1;
    const ProfilePair combo = combine({p1, p2}, {a, b}, rho);
    CHECK(inner_h1(combo, p3) ==
          doctest::Approx(a * inner_h1(p1, p3) + b * inner_h1(p2, p3)).epsilon(1e-6));
}

TEST_CASE("gram identity of component profiles") {
    // <phi_i, phi_j> + [H_i, H_j] = c0_i c0_j (4 sqrt2 / 3 sqrt pi) a(t_i, t_j)
    const double rho = 0.5;
    const double ti = 0.9, tj = 1.7;
    const ProfilePair pi = optimal_profile(ti, 1.0, rho);
    const ProfilePair pj = optimal_profile(tj, 1.0, rho);
    const double gram = l2_inner_phi(pi, pj) + inner_h1(pi, pj);
    const double closed = pi.comps[0].c0 * pj.comps[0].c0 * 4.0 * std::sqrt(2.0) /
                          (3.0 * std::sqrt(3.14159265358979323846)) * fbm_cov(ti, tj);
    CHECK(gram == doctest::Approx(closed).epsilon(1e-6));
}

TEST_CASE("minimizer orthogonal to zero-constraint perturbations") {
    const double rho = 0.5;
    const std::vector<double> times = {0.7, 1.3};
    const ProfilePair hat = minimizer_multi({0.4, -0.2}, times, rho);

    // three unit components; solve the 2x3 zero-constraint system for weights
    const std::vector<double> taus = {0.5, 0.9, 1.7};
    std::vector<ProfilePair> ps;
    for (double tau : taus) ps.push_back(optimal_profile(tau, 1.0, rho));
    // row_i[j] = a(t_i, tau_j)/tau_j^{3/2}: constraint of component j at time t_i
    double M[2][3];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            M[i][j] = fbm_cov(times[std::size_t(i)], taus[std::size_t(j)]) /
                      std::pow(taus[std::size_t(j)], 1.5);
    // nullspace by cross product of the two rows
    const std::vector<double> w = {M[0][1] * M[1][2] - M[0][2] * M[1][1],
                                   M[0][2] * M[1][0] - M[0][0] * M[1][2],
                                   M[0][0] * M[1][1] - M[0][1] * M[1][0]};
    const ProfilePair perp = combine(ps, w, rho);
    // the combination indeed has zero constraint integrals
    for (double t : times)
        CHECK(constraint_integral(perp, rho, t) == doctest::Approx(0.0).epsilon(1e-8));
    // and is orthogonal to the minimizer in the product geometry
    const double ip = l2_inner_phi(hat, perp) + inner_h1(hat, perp);
    const double scale = std::sqrt((l2_inner_phi(hat, hat) + inner_h1(hat, hat)) *
                                   (l2_inner_phi(perp, perp) + inner_h1(perp, perp)));
    CHECK(std::abs(ip) / scale < 1e-3);
}

TEST_CASE("weak solution residual") {
    const double rho = 0.45;
    const SeparableTestFunction G(TimeProfile::linear_decay(1.0), SpatialBump{1, 2.5, 0.8});

    // zero profile: identically zero residual
    ProfilePair zero;
    zero.rho = rho;
    CHECK(weak_solution_residual(zero, rho, G, 0.7) == doctest::Approx(0.0));

    Rng rng(41, 0);
    for (int k = 0; k < 5; ++k) {
        const double t1 = 0.4 + 0.6 * rng.uniform();
        const double t2 = t1 + 0.3 + rng.uniform();
        const double a1 = rng.uniform() * 1.6 - 0.8;
        const double a2 = rng.uniform() * 1.6 - 0.8;
        const ProfilePair p = minimizer_multi({a1, a2}, {t1, t2}, rho);
        const double t = 0.3 + 0.5 * rng.uniform();
        CHECK(weak_solution_residual(p, rho, G, t) < 1e-4);
    }

    // fixed-panel residual shrinks under refinement
    const ProfilePair p = optimal_profile(1.0, 0.8, rho);
    const double coarse = weak_solution_residual(p, rho, G, 0.8, 6);
    const double fine = weak_solution_residual(p, rho, G, 0.8, 12);
    CHECK(fine < coarse);
}

TEST_CASE("quadrature-backed values stable under refinement") {
    // adaptive tolerances tightened 4x move the answer by less than the
    // original tolerance
    const double a = fbm_kernel_sq_integral(1.0, 1e-9);
    const double b = fbm_kernel_sq_integral(1.0, 2.5e-10);
    CHECK(std::abs(a - b) < 1e-8);
    const double rho = 0.5;
    const ProfilePair p = optimal_profile(1.0, 1.0, rho);
    const double q1 = rate_q(p, rho);
    CHECK(std::abs(q1 - (q0(p, rho) + qdyn(p, rho))) < 1e-12);
}
