#include "wasep/volterra.hpp"

#include <cmath>
#include <stdexcept>

#include "wasep/fbm.hpp"
#include "wasep/ratefn.hpp"

namespace wasep {

Matrix volterra_collocation(double T, int m) {
    if (m < 1) throw std::invalid_argument("volterra_collocation: m < 1");
    const double ds = T / m;
    Matrix M{std::size_t(m), std::size_t(m)};
    for (int i = 1; i <= m; ++i) {
        const double ti = i * ds;
        for (int j = 1; j <= i; ++j) {
            const double sj = (j - 0.5) * ds;
            M(std::size_t(i - 1), std::size_t(j - 1)) = fbm_kernel(ti, sj) * ds;
        }
    }
    return M;
}

IPathResult i_path(const std::vector<double>& gamma, double T,
                   const IPathOptions& opt) {
    const int m = int(gamma.size());
    if (m < 64) throw std::invalid_argument("i_path: need a uniform grid of >= 64 points");
    const double ds = T / m;
    const Matrix M = volterra_collocation(T, m);

    const double nrm = spectral_norm(M);
    const double lambda = opt.tikhonov_scale * nrm * nrm;

    // normal equations (M^T M + lambda I) x = M^T gamma
    Matrix N{std::size_t(m), std::size_t(m)};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) {
            double s = 0.0;
            for (int k = std::max(i, j); k < m; ++k)
                s += M(std::size_t(k), std::size_t(i)) * M(std::size_t(k), std::size_t(j));
            N(std::size_t(i), std::size_t(j)) = s;
            N(std::size_t(j), std::size_t(i)) = s;
        }
    for (int i = 0; i < m; ++i) N(std::size_t(i), std::size_t(i)) += lambda;

    std::vector<double> rhs(std::size_t(m), 0.0);
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int k = i; k < m; ++k) s += M(std::size_t(k), std::size_t(i)) * gamma[std::size_t(k)];
        rhs[std::size_t(i)] = s;
    }

    IPathResult res;
    res.gammadot = spd_solve(N, rhs);

    double rnorm = 0.0, gnorm = 0.0;
    for (int i = 0; i < m; ++i) {
        double mi = 0.0;
        for (int j = 0; j <= i; ++j)
            mi += M(std::size_t(i), std::size_t(j)) * res.gammadot[std::size_t(j)];
        const double r = mi - gamma[std::size_t(i)];
        rnorm += r * r;
        gnorm += gamma[std::size_t(i)] * gamma[std::size_t(i)];
    }
    res.residual = gnorm > 0.0 ? std::sqrt(rnorm / gnorm) : std::sqrt(rnorm);
    if (gnorm > 0.0 && res.residual > opt.residual_threshold) {
        res.infinite = true;
        res.value = std::numeric_limits<double>::infinity();
        return res;
    }
    double v = 0.0;
    for (double g : res.gammadot) v += g * g;
    res.value = 0.5 * v * ds;
    return res;
}

double minimize_path_rate(const std::vector<double>& alpha,
                          const std::vector<double>& times, double rho, double T,
                          int m) {
    if (alpha.size() != times.size())
        throw std::invalid_argument("minimize_path_rate: size mismatch");
    const double ds = T / m;
    const std::size_t k = times.size();
    for (double t : times) {
        const double q = t / ds;
        if (std::abs(q - std::round(q)) > 1e-9 || t <= 0.0 || t > T + 1e-12)
            throw std::invalid_argument("minimize_path_rate: constraint time off grid");
    }
    // constraint rows C_ij = K(t_i, s_j) ds
    Matrix C{k, std::size_t(m)};
    for (std::size_t i = 0; i < k; ++i) {
        for (int j = 1; j <= m; ++j) {
            const double sj = (j - 0.5) * ds;
            if (sj >= times[i]) break;
            C(i, std::size_t(j - 1)) = fbm_kernel(times[i], sj) * ds;
        }
    }
    // Gram of the constraints in the (1/2)||.||^2_{ds} geometry
    Matrix G(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (int l = 0; l < m; ++l) s += C(i, std::size_t(l)) * C(j, std::size_t(l));
            G(i, j) = s / ds;
        }
    const std::vector<double> lam = spd_solve(G, alpha);
    return 0.5 * dot(lam, alpha) / sigma_sq(rho);
}

}  // namespace wasep
