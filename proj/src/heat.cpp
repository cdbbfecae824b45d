#include "wasep/heat.hpp"

#include <cmath>

#include "wasep/quad.hpp"

namespace wasep {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;
}

double heat_kernel(double t, const double* u, int d) {
    if (t <= 0.0) throw std::invalid_argument("heat_kernel: t must be > 0");
    double q = 0.0;
    for (int i = 0; i < d; ++i) q += u[i] * u[i];
    return std::pow(two_pi * t, -0.5 * d) * std::exp(-q / (2.0 * t));
}

double heat_kernel_1d(double t, double u) { return heat_kernel(t, &u, 1); }

double heat_kernel_grad_1d(double t, double u) {
    return -(u / t) * heat_kernel_1d(t, u);
}

double time_integrated_kernel(double t, double v) {
    if (t <= 0.0) return 0.0;
    const double av = std::abs(v);
    return 2.0 * t * heat_kernel_1d(t, v) - av * std::erfc(av / std::sqrt(2.0 * t));
}

double time_integrated_kernel_quad(double t, double v, double tol) {
    if (t <= 0.0) return 0.0;
    // s = w^2 turns p_s(v) ds into sqrt(2/pi) exp(-v^2/(2 w^2)) dw
    const double c = std::sqrt(2.0 / 3.14159265358979323846);
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    return integrate(
        [&](double w) {
            if (w <= 0.0) return v == 0.0 ? c : 0.0;
            return c * std::exp(-v * v / (2.0 * w * w));
        },
        0.0, std::sqrt(t), opt);
}

double time_integrated_kernel_grad(double u_time, double v) {
    if (u_time <= 0.0 || v == 0.0) return 0.0;
    const double av = std::abs(v);
    const double s = v > 0.0 ? 1.0 : -1.0;
    return -s * std::erfc(av / std::sqrt(2.0 * u_time));
}

double time_integrated_kernel_grad_quad(double u_time, double v, double tol) {
    if (u_time <= 0.0 || v == 0.0) return 0.0;
    const double c = std::sqrt(2.0 / 3.14159265358979323846);
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    return integrate(
        [&](double w) {
            if (w <= 0.0) return 0.0;
            return -c * (v / (w * w)) * std::exp(-v * v / (2.0 * w * w));
        },
        0.0, std::sqrt(u_time), opt);
}

}  // namespace wasep
