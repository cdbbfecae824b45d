#include "wasep/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "wasep/support_box.hpp"

namespace wasep {

namespace {
double drift_sites(const ScalingParams& p) {
    // v_n in site units per macroscopic time
    return drift_velocity(p);
}
}  // namespace

double fluctuation_field(const Configuration& config, const TestFunction& H,
                         double t, const ScalingParams& p) {
    const Lattice lat = Lattice::from_params(p);
    const double R = H.support_radius();
    if (R >= double(p.L_macro) / 2.0)
        throw std::invalid_argument("fluctuation_field: support exceeds half torus");
    double sum = 0.0;
    for_each_support_site(p, lat, R, drift_sites(p), t, 1.0,
                          [&](std::int64_t site, const double* u) {
                              const double e = double(config.occ[std::size_t(site)]) - p.rho;
                              sum += e * H.value(t, u);
                          });
    return sum / a_n(p);
}

LocalFunction LocalFunction::origin_occupancy() {
    LocalFunction f;
    f.window = 1;
    f.eval = [](std::uint32_t bits) { return double(bits & 1u); };
    return f;
}

double ftilde(const LocalFunction& f, double rho) {
    if (f.window < 1 || f.window > 20)
        throw std::invalid_argument("ftilde: window must be in 1..20");
    const std::uint32_t m = 1u << f.window;
    double s = 0.0;
    for (std::uint32_t bits = 0; bits < m; ++bits) {
        double pr = 1.0;
        for (int j = 0; j < f.window; ++j)
            pr *= (bits >> j) & 1u ? rho : 1.0 - rho;
        s += pr * f.eval(bits);
    }
    return s;
}

OccupationTrajectory occupation_time(const PathRecord& path, const LocalFunction& f,
                                     const ScalingParams& p,
                                     const std::vector<double>& grid) {
    const Lattice lat = Lattice::from_params(p);
    if (f.window > lat.side)
        throw std::invalid_argument("occupation_time: window exceeds lattice");
    const double fbar = ftilde(f, p.rho);
    const double scale = double(p.n) / a_n(p);

    std::uint32_t bits = 0;
    for (int j = 0; j < f.window; ++j)
        if (path.initial.occ[std::size_t(j)]) bits |= 1u << j;

    OccupationTrajectory out;
    out.grid = grid;
    out.gamma.reserve(grid.size());

    double acc = 0.0;        // unscaled integral of f - fbar
    double tprev = 0.0;
    double fcur = f.eval(bits) - fbar;
    std::size_t gi = 0;

    auto advance_to = [&](double tnew) {
        while (gi < grid.size() && grid[gi] <= tnew) {
            out.gamma.push_back(scale * (acc + fcur * (grid[gi] - tprev)));
            ++gi;
        }
        acc += fcur * (tnew - tprev);
        tprev = tnew;
    };

    for (const auto& e : path.jumps) {
        const std::int64_t tgt = lat.neighbor(e.site, e.axis(), e.sign());
        const bool src_in = e.site < f.window;
        const bool tgt_in = tgt < f.window;
        if (!src_in && !tgt_in) continue;
        advance_to(e.time);
        if (src_in) bits &= ~(1u << e.site);
        if (tgt_in) bits |= 1u << tgt;
        fcur = f.eval(bits) - fbar;
    }
    advance_to(path.T);
    out.final_value = scale * acc;
    return out;
}

double q_n_observable(const Configuration& config, const TestFunction& H,
                      double s, const ScalingParams& p, bool discrete_gradient) {
    const Lattice lat = Lattice::from_params(p);
    const double R = H.support_radius();
    if (R >= double(p.L_macro) / 2.0)
        throw std::invalid_argument("q_n_observable: support exceeds half torus");
    const double pref = p.alpha * std::pow(double(p.n), 1.0 - p.beta) /
                        (double(p.d) * a_n(p));
    if (pref == 0.0) return 0.0;
    double g[3];
    double sum = 0.0;
    for_each_support_site(
        p, lat, R, drift_sites(p), s, 2.0, [&](std::int64_t site, const double* u) {
            const double ex = double(config.occ[std::size_t(site)]) - p.rho;
            for (int a = 0; a < lat.d; ++a) {
                const std::int64_t nb = lat.neighbor(site, a, 1);
                const double ey = double(config.occ[std::size_t(nb)]) - p.rho;
                if (discrete_gradient) {
                    double un[3];
                    for (int b = 0; b < lat.d; ++b) un[b] = u[b];
                    un[a] += 1.0 / double(p.n);
                    sum += ex * ey * double(p.n) * (H.value(s, un) - H.value(s, u));
                } else {
                    H.grad(s, u, g);
                    sum += ex * ey * g[a];
                }
            }
        });
    return pref * sum;
}

std::vector<double> integrate_qn(const PathRecord& path, const TestFunction& H,
                                 const ScalingParams& p,
                                 const std::vector<double>& grid) {
    if (std::abs(drift_velocity(p)) != 0.0)
        throw std::invalid_argument("integrate_qn: needs a static frame (v_n = 0)");
    const Lattice lat = Lattice::from_params(p);
    const double pref = p.alpha * std::pow(double(p.n), 1.0 - p.beta) /
                        (double(p.d) * a_n(p));

    // static per-site gradient of H
    std::vector<double> gx(std::size_t(lat.n_sites) * std::size_t(lat.d), 0.0);
    double g[3];
    for_each_support_site(p, lat, H.support_radius(), 0.0, 0.0, 2.0,
                          [&](std::int64_t site, const double* u) {
                              H.grad(0.0, u, g);
                              for (int a = 0; a < lat.d; ++a)
                                  gx[std::size_t(site) * lat.d + std::size_t(a)] = g[a];
                          });

    Configuration cfg = path.initial;
    auto pair_term = [&](std::int64_t x, int axis) {
        const double gv = gx[std::size_t(x) * lat.d + std::size_t(axis)];
        if (gv == 0.0) return 0.0;
        const std::int64_t y = lat.neighbor(x, axis, 1);
        return (double(cfg.occ[std::size_t(x)]) - p.rho) *
               (double(cfg.occ[std::size_t(y)]) - p.rho) * gv;
    };

    double S = 0.0;
    for (std::int64_t x = 0; x < lat.n_sites; ++x)
        for (int a = 0; a < lat.d; ++a) S += pair_term(x, a);

    std::vector<double> out;
    out.reserve(grid.size());
    double acc = 0.0, tprev = 0.0;
    std::size_t gi = 0;
    auto advance_to = [&](double tnew) {
        while (gi < grid.size() && grid[gi] <= tnew) {
            out.push_back(pref * (acc + S * (grid[gi] - tprev)));
            ++gi;
        }
        acc += S * (tnew - tprev);
        tprev = tnew;
    };

    for (const auto& e : path.jumps) {
        advance_to(e.time);
        const std::int64_t src = e.site;
        const std::int64_t tgt = lat.neighbor(src, e.axis(), e.sign());
        // pairs whose term changes: (x, a) with x or x+e_a in {src, tgt}
        std::int64_t xs[12];
        int axs[12];
        int np = 0;
        for (std::int64_t sidex : {src, tgt}) {
            for (int a = 0; a < lat.d; ++a) {
                const std::int64_t left = lat.neighbor(sidex, a, -1);
                for (std::int64_t x : {sidex, left}) {
                    bool dup = false;
                    for (int q = 0; q < np; ++q)
                        if (xs[q] == x && axs[q] == a) dup = true;
                    if (!dup) {
                        xs[np] = x;
                        axs[np] = a;
                        ++np;
                    }
                }
            }
        }
        for (int q = 0; q < np; ++q) S -= pair_term(xs[q], axs[q]);
        cfg.occ[std::size_t(src)] = 0;
        cfg.occ[std::size_t(tgt)] = 1;
        for (int q = 0; q < np; ++q) S += pair_term(xs[q], axs[q]);
    }
    advance_to(path.T);
    return out;
}

double relative_entropy_initial(const SpatialField& phi, const ScalingParams& p) {
    const Lattice lat = Lattice::from_params(p);
    if (phi.is_zero()) return 0.0;
    double s = 0.0;
    for_each_support_site(
        p, lat, phi.radius, 0.0, 0.0, 1.0, [&](std::int64_t site, const double*) {
            const double px = perturbed_marginal(p, lat, phi, site);
            if (px < 0.0 || px > 1.0)
                throw std::invalid_argument("relative_entropy_initial: marginal out of [0,1]");
            if (px > 0.0) s += px * std::log(px / p.rho);
            if (px < 1.0) s += (1.0 - px) * std::log((1.0 - px) / (1.0 - p.rho));
        });
    return s;
}

}  // namespace wasep
