#include "wasep/testfn.hpp"

#include <algorithm>

namespace wasep {

double derivative_consistency(const TestFunction& f, double t, const double* u,
                              double h) {
    const int d = f.dim();
    double up[3], um[3], g[3];
    double worst = 0.0;

    auto rel = [](double got, double ref) {
        const double scale = std::max(1.0, std::abs(ref));
        return std::abs(got - ref) / scale;
    };

    f.grad(t, u, g);
    double lap_fd = 0.0;
    const double f0 = f.value(t, u);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            up[j] = u[j];
            um[j] = u[j];
        }
        up[i] += h;
        um[i] -= h;
        const double fp = f.value(t, up);
        const double fm = f.value(t, um);
        worst = std::max(worst, rel((fp - fm) / (2.0 * h), g[i]));
        lap_fd += (fp - 2.0 * f0 + fm) / (h * h);
    }
    worst = std::max(worst, rel(lap_fd, f.laplacian(t, u)));
    const double ft = (f.value(t + h, u) - f.value(t - h, u)) / (2.0 * h);
    worst = std::max(worst, rel(ft, f.dt(t, u)));
    return worst;
}

}  // namespace wasep
