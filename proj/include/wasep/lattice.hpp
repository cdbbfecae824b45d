#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wasep/params.hpp"
#include "wasep/rng.hpp"

namespace wasep {

// Periodic torus with side L_macro*n per dimension.
struct Lattice {
    int d = 1;
    std::int64_t side = 0;
    std::int64_t n_sites = 0;
    std::int64_t stride[3] = {1, 0, 0};

    static Lattice from_params(const ScalingParams& p);

    std::int64_t coord(std::int64_t idx, int axis) const {
        return (idx / stride[axis]) % side;
    }

    // site shifted by +-1 along axis, wrapped
    std::int64_t neighbor(std::int64_t idx, int axis, int dir) const {
        const std::int64_t c = coord(idx, axis);
        if (dir > 0)
            return c == side - 1 ? idx - (side - 1) * stride[axis] : idx + stride[axis];
        return c == 0 ? idx + (side - 1) * stride[axis] : idx - stride[axis];
    }
};

// wrap into [-L/2, L/2)
inline double wrap_macro(double y, double L) {
    return y - L * std::floor(y / L + 0.5);
}

struct Configuration {
    std::vector<std::uint8_t> occ;
    std::int64_t particle_count = 0;

    bool operator==(const Configuration&) const = default;
};

// Compactly supported function on R^d (sup-norm box of given radius).
struct SpatialField {
    int dim = 1;
    double radius = 0.0;
    std::function<double(const double*)> f;

    double operator()(const double* u) const { return f(u); }
    double eval1(double v) const { return f(&v); }
    bool is_zero() const { return !f; }
};

SpatialField spatial_field_1d(std::function<double(double)> g, double radius);

Configuration sample_bernoulli(const ScalingParams& p, Rng& rng);
Configuration sample_bernoulli(const ScalingParams& p, std::uint64_t seed);

// Same lattice, explicit density in [0,1] (admits the degenerate endpoints).
Configuration sample_bernoulli_density(const ScalingParams& p, double rho, Rng& rng);

// Product measure with marginals rho + chi(rho) a_n n^{-d} phi(x/n).
// Throws if any marginal leaves [0,1], naming the offending site.
Configuration sample_perturbed(const ScalingParams& p, const SpatialField& phi,
                               Rng& rng);
Configuration sample_perturbed(const ScalingParams& p, const SpatialField& phi,
                               std::uint64_t seed);

// Marginal of sample_perturbed at a site (used by entropy and Girsanov).
double perturbed_marginal(const ScalingParams& p, const Lattice& lat,
                          const SpatialField& phi, std::int64_t site);

// Centered macroscopic coordinate of a site, u_i in [-L_macro/2, L_macro/2).
void site_coordinates(const ScalingParams& p, const Lattice& lat,
                      std::int64_t site, double* u);

}  // namespace wasep
