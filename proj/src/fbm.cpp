#include "wasep/fbm.hpp"

#include <cmath>
#include <stdexcept>

#include "wasep/quad.hpp"

namespace wasep {

double beta_quarter_half() {
    // split at 1/2; x = z^4 kills the x^{-3/4} end, 1-x = y^2 the other
    QuadOptions opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-13;
    const double left = integrate(
        [](double z) { return 4.0 / std::sqrt(1.0 - z * z * z * z); }, 0.0,
        std::pow(0.5, 0.25), opt);
    const double right = integrate(
        [](double y) { return 2.0 * std::pow(1.0 - y * y, -0.75); }, 0.0,
        std::sqrt(0.5), opt);
    return left + right;
}

double fbm_kernel_normalization() {
    static const double c = std::sqrt(3.0 / (8.0 * beta_quarter_half()));
    return c;
}

double fbm_kernel(double t, double s) {
    if (!(s > 0.0 && s < t)) throw std::invalid_argument("fbm_kernel: need 0 < s < t");
    const double ck = fbm_kernel_normalization();
    // u = s + w^4: (u-s)^{-3/4} du = 4 dw
    const double wmax = std::pow(t - s, 0.25);
    const double integral = gauss(
        [&](double w) {
            const double w2 = w * w;
            return 4.0 * std::pow(s + w2 * w2, 0.25);
        },
        0.0, wmax, 32);
    return ck * std::pow(s, -0.25) * integral;
}

double fbm_kernel_sq_integral(double t, double tol) {
    // s = z^2 tames the s^{-1/2} behaviour of K^2 at the left end
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    return integrate(
        [&](double z) {
            const double s = z * z;
            if (s <= 0.0 || s >= t) return 0.0;
            const double k = fbm_kernel(t, s);
            return 2.0 * z * k * k;
        },
        0.0, std::sqrt(t), opt);
}

double fbm_cov(double s, double t) {
    if (s < 0.0 || t < 0.0) throw std::invalid_argument("fbm_cov: negative time");
    return 0.5 * (std::pow(t, 1.5) + std::pow(s, 1.5) - std::pow(std::abs(t - s), 1.5));
}

CovMatrix cov_matrix(const std::vector<double>& times) {
    if (times.empty()) throw std::invalid_argument("cov_matrix: empty times");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1]))
            throw std::invalid_argument("cov_matrix: times must be strictly increasing");
    if (!(times.front() > 0.0))
        throw std::invalid_argument("cov_matrix: times must be positive");
    CovMatrix m;
    m.times = times;
    const std::size_t k = times.size();
    m.a = Matrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m.a(i, j) = fbm_cov(times[i], times[j]);
    m.chol = cholesky(m.a);  // throws if not PD
    return m;
}

FbmSampler::FbmSampler(std::vector<double> g, int substeps_total) : grid(std::move(g)) {
    if (grid.empty()) throw std::invalid_argument("FbmSampler: empty grid");
    const double tmax = grid.back();
    dt = tmax / substeps_total;
    rows.resize(grid.size());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double tg = grid[gi];
        const double steps = tg / dt;
        const auto nsteps = std::int64_t(std::llround(steps));
        if (std::abs(steps - double(nsteps)) > 1e-9)
            throw std::invalid_argument("FbmSampler: grid time off substep boundary");
        rows[gi].resize(std::size_t(nsteps));
        for (std::int64_t j = 0; j < nsteps; ++j)
            rows[gi][std::size_t(j)] = fbm_kernel(tg, (j + 0.5) * dt);
    }
}

std::vector<double> FbmSampler::sample(Rng& rng) const {
    const std::size_t nsub = rows.back().size();
    std::vector<double> db(nsub);
    const double sq = std::sqrt(dt);
    for (std::size_t j = 0; j < nsub; ++j) db[j] = sq * rng.gaussian();
    std::vector<double> out(grid.size());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        double s = 0.0;
        const auto& row = rows[gi];
        for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * db[j];
        out[gi] = s;
    }
    return out;
}

}  // namespace wasep
