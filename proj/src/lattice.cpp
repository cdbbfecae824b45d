#include "wasep/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wasep {

Lattice Lattice::from_params(const ScalingParams& p) {
    p.validate();
    Lattice lat;
    lat.d = p.d;
    lat.side = p.L_macro * p.n;
    lat.n_sites = 1;
    for (int a = 0; a < p.d; ++a) {
        lat.stride[a] = lat.n_sites;
        lat.n_sites *= lat.side;
    }
    return lat;
}

SpatialField spatial_field_1d(std::function<double(double)> g, double radius) {
    SpatialField f;
    f.dim = 1;
    f.radius = radius;
    f.f = [g = std::move(g)](const double* u) { return g(u[0]); };
    return f;
}

void site_coordinates(const ScalingParams& p, const Lattice& lat,
                      std::int64_t site, double* u) {
    for (int a = 0; a < lat.d; ++a) {
        std::int64_t c = lat.coord(site, a);
        if (c >= lat.side / 2) c -= lat.side;
        u[a] = double(c) / double(p.n);
    }
}

Configuration sample_bernoulli_density(const ScalingParams& p, double rho, Rng& rng) {
    if (rho < 0.0 || rho > 1.0)
        throw std::invalid_argument("sample_bernoulli_density: rho outside [0,1]");
    const Lattice lat = Lattice::from_params(p);
    Configuration c;
    c.occ.resize(std::size_t(lat.n_sites));
    c.particle_count = 0;
    for (std::int64_t x = 0; x < lat.n_sites; ++x) {
        const bool occ = rho >= 1.0 ? true : rng.bernoulli(rho);
        c.occ[std::size_t(x)] = occ ? 1 : 0;
        c.particle_count += occ;
    }
    return c;
}

Configuration sample_bernoulli(const ScalingParams& p, Rng& rng) {
    return sample_bernoulli_density(p, p.rho, rng);
}

Configuration sample_bernoulli(const ScalingParams& p, std::uint64_t seed) {
    Rng rng(seed, 0);
    return sample_bernoulli(p, rng);
}

double perturbed_marginal(const ScalingParams& p, const Lattice& lat,
                          const SpatialField& phi, std::int64_t site) {
    if (phi.is_zero()) return p.rho;
    double u[3] = {0, 0, 0};
    site_coordinates(p, lat, site, u);
    for (int a = 0; a < lat.d; ++a)
        if (std::abs(u[a]) > phi.radius) return p.rho;
    const double amp = chi(p.rho) * a_n(p) / std::pow(double(p.n), p.d);
    return p.rho + amp * phi(u);
}

Configuration sample_perturbed(const ScalingParams& p, const SpatialField& phi,
                               Rng& rng) {
    const Lattice lat = Lattice::from_params(p);
    if (!phi.is_zero() && phi.radius >= double(p.L_macro) / 2.0)
        throw std::invalid_argument("sample_perturbed: support exceeds half torus");
    Configuration c;
    c.occ.resize(std::size_t(lat.n_sites));
    c.particle_count = 0;
    for (std::int64_t x = 0; x < lat.n_sites; ++x) {
        const double px = perturbed_marginal(p, lat, phi, x);
        if (px < 0.0 || px > 1.0)
            throw std::invalid_argument("sample_perturbed: marginal " +
                                        std::to_string(px) + " out of [0,1] at site " +
                                        std::to_string(x));
        const bool occ = rng.bernoulli(px);
        c.occ[std::size_t(x)] = occ ? 1 : 0;
        c.particle_count += occ;
    }
    return c;
}

Configuration sample_perturbed(const ScalingParams& p, const SpatialField& phi,
                               std::uint64_t seed) {
    Rng rng(seed, 0);
    return sample_perturbed(p, phi, rng);
}

}  // namespace wasep
