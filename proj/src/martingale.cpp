#include "wasep/martingale.hpp"

#include <cmath>
#include <stdexcept>

#include "wasep/support_box.hpp"

namespace wasep {

namespace {

struct Rates {
    double r_plus, r_minus;
    Rates(const ScalingParams& p) {
        const double n2 = double(p.n) * double(p.n);
        r_plus = n2 * (0.5 / p.d + p.alpha * std::pow(double(p.n), -p.beta) / p.d);
        r_minus = n2 * 0.5 / p.d;
    }
};

// ---- generic compensator: direct bond sums at quadrature nodes ----

struct GenericCompensator {
    const ScalingParams& p;
    const Lattice lat;
    const TestFunction& H;
    Rates rates;
    double c;     // a_n / n^d
    double vn;    // drift in site units per unit time
    double R;

    GenericCompensator(const ScalingParams& params, const TestFunction& h)
        : p(params), lat(Lattice::from_params(params)), H(h), rates(params) {
        c = a_n(p) / std::pow(double(p.n), p.d);
        vn = drift_velocity(p);
        R = H.support_radius();
    }

    double omega(double s, const Configuration& cfg) const {
        double a_part = 0.0;
        double b_part = 0.0;
        double g[3];
        const double shift = vn / double(p.n);
        for_each_support_site(p, lat, R, vn, s, 2.0, [&](std::int64_t x, const double* u) {
            const double hx = H.value(s, u);
            const double ex = double(cfg.occ[std::size_t(x)]) - p.rho;
            {
                double da = H.dt(s, u);
                if (shift != 0.0) {
                    H.grad(s, u, g);
                    for (int a = 0; a < lat.d; ++a) da -= shift * g[a];
                }
                a_part += ex * da;
            }
            // bonds (x, x+e_a), scanned once from x
            for (int a = 0; a < lat.d; ++a) {
                const std::int64_t y = lat.neighbor(x, a, 1);
                const bool ox = cfg.occ[std::size_t(x)], oy = cfg.occ[std::size_t(y)];
                if (ox == oy) continue;
                double uy[3];
                for (int b = 0; b < lat.d; ++b) uy[b] = u[b];
                uy[a] += 1.0 / double(p.n);
                const double hy = H.value(s, uy);
                if (hx == hy) continue;
                if (ox)  // right move x -> y
                    b_part += rates.r_plus * std::expm1(c * (hy - hx));
                else     // left move y -> x
                    b_part += rates.r_minus * std::expm1(c * (hx - hy));
            }
        });
        return c * a_part + b_part;
    }

    // 3-point Gauss, refined once when the halved estimate disagrees
    double panel(double a, double b, const Configuration& cfg) const {
        const auto f = [&](double s) { return omega(s, cfg); };
        const double i1 = gl3(f, a, b);
        const double m = 0.5 * (a + b);
        const double i2 = gl3(f, a, m) + gl3(f, m, b);
        if (std::abs(i2 - i1) > 1e-9 * std::max(1.0, std::abs(i2))) return i2;
        return i1;
    }

    template <class F>
    static double gl3(const F& f, double a, double b) {
        static const double x1 = 0.7745966692414834;  // sqrt(3/5)
        static const double w0 = 8.0 / 9.0, w1 = 5.0 / 9.0;
        const double m = 0.5 * (a + b), h = 0.5 * (b - a);
        return h * (w0 * f(m) + w1 * f(m - h * x1) + w1 * f(m + h * x1));
    }

    double interval(double a, double b, const Configuration& cfg) const {
        if (b <= a) return 0.0;
        const double hmax = p.T / 64.0;
        const int panels = std::max(1, int(std::ceil((b - a) / hmax)));
        double s = 0.0;
        for (int i = 0; i < panels; ++i)
            s += panel(a + (b - a) * i / panels, a + (b - a) * (i + 1) / panels, cfg);
        return s;
    }

    double field_term(double t, const Configuration& cfg) const {
        double s = 0.0;
        for_each_support_site(p, lat, R, vn, t, 1.0,
                              [&](std::int64_t x, const double* u) {
                                  s += (double(cfg.occ[std::size_t(x)]) - p.rho) *
                                       H.value(t, u);
                              });
        return c * s;
    }

    bool jump_in_box(const JumpEvent& e) const {
        // conservative: with a moving frame every jump delimits an interval
        if (vn != 0.0) return true;
        const double lim = R + 3.0 / double(p.n);
        const Lattice& l = lat;
        const std::int64_t tgt = l.neighbor(e.site, e.axis(), e.sign());
        for (std::int64_t site : {e.site, tgt}) {
            bool inside = true;
            for (int a = 0; a < l.d; ++a) {
                std::int64_t cc = l.coord(site, a);
                if (cc >= l.side / 2) cc -= l.side;
                if (std::abs(double(cc) / double(p.n)) > lim) inside = false;
            }
            if (inside) return true;
        }
        return false;
    }
};

// ---- fast path: separable H = psi(s) h(u), static frame ----

struct SeparableCompensator {
    const ScalingParams& p;
    const Lattice lat;
    const TimeProfile psi;
    Rates rates;
    double c;
    std::vector<double> hsite;   // h(u_x) per site
    double S_h = 0.0;            // sum (eta_x - rho) h(u_x)
    static constexpr int K = 14;
    double P[K + 1] = {0.0};     // sum over executable bonds of r * z^k

    SeparableCompensator(const ScalingParams& params, const SeparableParts& parts,
                         const Configuration& cfg)
        : p(params), lat(Lattice::from_params(params)), psi(*parts.psi), rates(params) {
        c = a_n(p) / std::pow(double(p.n), p.d);
        hsite.assign(std::size_t(lat.n_sites), 0.0);
        const SpatialBump& h = *parts.h;
        double u[3];
        for (std::int64_t x = 0; x < lat.n_sites; ++x) {
            site_coordinates(p, lat, x, u);
            hsite[std::size_t(x)] = h.value(u);
        }
        for (std::int64_t x = 0; x < lat.n_sites; ++x) {
            S_h += (double(cfg.occ[std::size_t(x)]) - p.rho) * hsite[std::size_t(x)];
            for (int a = 0; a < lat.d; ++a)
                bond_update(x, a, cfg, +1.0);
        }
    }

    void bond_update(std::int64_t x, int axis, const Configuration& cfg, double sgn) {
        const std::int64_t y = lat.neighbor(x, axis, 1);
        const double dh = hsite[std::size_t(y)] - hsite[std::size_t(x)];
        if (dh == 0.0) return;
        const bool ox = cfg.occ[std::size_t(x)], oy = cfg.occ[std::size_t(y)];
        if (ox == oy) return;
        const double z = ox ? c * dh : -c * dh;
        const double r = ox ? rates.r_plus : rates.r_minus;
        double zk = 1.0;
        for (int k = 1; k <= K; ++k) {
            zk *= z;
            P[k] += sgn * r * zk;
        }
    }

    void apply_jump(const JumpEvent& e, Configuration& cfg) {
        const std::int64_t src = e.site;
        const std::int64_t tgt = lat.neighbor(src, e.axis(), e.sign());
        std::int64_t xs[12];
        int axs[12], np = 0;
        for (std::int64_t s : {src, tgt}) {
            for (int a = 0; a < lat.d; ++a) {
                for (std::int64_t x : {s, lat.neighbor(s, a, -1)}) {
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
        for (int q = 0; q < np; ++q) bond_update(xs[q], axs[q], cfg, -1.0);
        cfg.occ[std::size_t(src)] = 0;
        cfg.occ[std::size_t(tgt)] = 1;
        for (int q = 0; q < np; ++q) bond_update(xs[q], axs[q], cfg, +1.0);
        S_h += hsite[std::size_t(tgt)] - hsite[std::size_t(src)];
    }

    double interval(double a, double b) const {
        // int A = c S_h [psi(b) - psi(a)];  int B = sum_k P_k/k! int psi^k
        double s = c * S_h * (psi.value(b) - psi.value(a));
        double kfac = 1.0;
        for (int k = 1; k <= K; ++k) {
            kfac *= k;
            if (P[k] != 0.0) s += P[k] / kfac * psi.int_pow(k, a, b);
        }
        return s;
    }

    double field_term(double t, const Configuration& cfg) const {
        double s = 0.0;
        for (std::int64_t x = 0; x < lat.n_sites; ++x)
            s += (double(cfg.occ[std::size_t(x)]) - p.rho) * hsite[std::size_t(x)];
        return c * psi.value(t) * s;
    }
};

}  // namespace

double log_martingale(const PathRecord& path, const TestFunction& H,
                      const ScalingParams& p, CompensatorMode mode) {
    p.validate();
    const Lattice lat = Lattice::from_params(p);
    if (std::ssize(path.initial.occ) != lat.n_sites)
        throw std::invalid_argument("log_martingale: path/lattice mismatch");
    if (H.support_radius() <= 0.0) return 0.0;
    if (H.support_radius() >= double(p.L_macro) / 2.0)
        throw std::invalid_argument("log_martingale: support exceeds half torus");

    const SeparableParts parts = H.separable();
    const bool can_fast = parts.psi && parts.h && drift_velocity(p) == 0.0;
    if (mode == CompensatorMode::FastSeparable && !can_fast)
        throw std::invalid_argument("log_martingale: fast path needs separable H, v_n = 0");
    const bool fast = mode == CompensatorMode::FastSeparable ||
                      (mode == CompensatorMode::Auto && can_fast);

    Configuration cfg = path.initial;
    double comp = 0.0;

    if (fast) {
        SeparableCompensator sc(p, parts, cfg);
        const double f0 = sc.field_term(0.0, cfg);
        double tprev = 0.0;
        for (const auto& e : path.jumps) {
            comp += sc.interval(tprev, e.time);
            sc.apply_jump(e, cfg);
            tprev = e.time;
        }
        comp += sc.interval(tprev, path.T);
        return sc.field_term(path.T, cfg) - f0 - comp;
    }

    GenericCompensator gc(p, H);
    const double f0 = gc.field_term(0.0, cfg);
    double pending = 0.0;
    for (const auto& e : path.jumps) {
        if (gc.jump_in_box(e)) {
            comp += gc.interval(pending, e.time, cfg);
            pending = e.time;
        }
        const std::int64_t tgt = lat.neighbor(e.site, e.axis(), e.sign());
        cfg.occ[std::size_t(e.site)] = 0;
        cfg.occ[std::size_t(tgt)] = 1;
    }
    comp += gc.interval(pending, path.T, cfg);
    return gc.field_term(path.T, cfg) - f0 - comp;
}

double initial_log_density(const Configuration& c0, const SpatialField& phi,
                           const ScalingParams& p) {
    if (phi.is_zero()) return 0.0;
    const Lattice lat = Lattice::from_params(p);
    double s = 0.0;
    for_each_support_site(
        p, lat, phi.radius, 0.0, 0.0, 1.0, [&](std::int64_t site, const double*) {
            const double px = perturbed_marginal(p, lat, phi, site);
            if (px <= 0.0 || px >= 1.0)
                throw std::invalid_argument("initial_log_density: marginal out of (0,1)");
            if (c0.occ[std::size_t(site)])
                s += std::log(px / p.rho);
            else
                s += std::log((1.0 - px) / (1.0 - p.rho));
        });
    return s;
}

double girsanov_weight(const PathRecord& path, const TestFunction& H,
                       const SpatialField& phi, const ScalingParams& p) {
    return log_martingale(path, H, p) + initial_log_density(path.initial, phi, p);
}

}  // namespace wasep
