#pragma once

#include <cmath>
#include <cstdint>

#include "wasep/lattice.hpp"

namespace wasep {

// Visit every site whose drift-frame coordinate u = (x - v t m)/n lies in the
// box |u_i| <= radius + margin_sites/n, passing (site index, u). The frame
// center moves at v per axis (site units per unit time). Assumes the box fits
// in the torus; callers validate support < L_macro/2.
template <class F>
void for_each_support_site(const ScalingParams& p, const Lattice& lat,
                           double radius, double v_sites, double t,
                           double margin_sites, F&& fn) {
    const double n = double(p.n);
    const double center = v_sites * t;
    std::int64_t lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    for (int a = 0; a < lat.d; ++a) {
        lo[a] = std::int64_t(std::ceil(center - radius * n - margin_sites));
        hi[a] = std::int64_t(std::floor(center + radius * n + margin_sites));
        if (hi[a] - lo[a] + 1 >= lat.side) {
            lo[a] = 0;
            hi[a] = lat.side - 1;
        }
    }
    const auto wrap = [&](std::int64_t k) {
        std::int64_t c = k % lat.side;
        return c < 0 ? c + lat.side : c;
    };
    const double Lm = double(p.L_macro);
    const auto ucoord = [&](std::int64_t k) {
        return wrap_macro((double(k) - center) / n, Lm);
    };
    double u[3] = {0.0, 0.0, 0.0};
    if (lat.d == 1) {
        for (std::int64_t k = lo[0]; k <= hi[0]; ++k) {
            u[0] = ucoord(k);
            fn(wrap(k), u);
        }
        return;
    }
    for (std::int64_t k0 = lo[0]; k0 <= hi[0]; ++k0) {
        u[0] = ucoord(k0);
        const std::int64_t i0 = wrap(k0) * lat.stride[0];
        for (std::int64_t k1 = lo[1]; k1 <= hi[1]; ++k1) {
            u[1] = ucoord(k1);
            const std::int64_t i1 = i0 + wrap(k1) * lat.stride[1];
            if (lat.d == 2) {
                fn(i1, u);
                continue;
            }
            for (std::int64_t k2 = lo[2]; k2 <= hi[2]; ++k2) {
                u[2] = ucoord(k2);
                fn(i1 + wrap(k2) * lat.stride[2], u);
            }
        }
    }
}

}  // namespace wasep
