#pragma once

#include <algorithm>
#include <cmath>

#include "kinpart/bspline.hpp"
#include "kinpart/grid.hpp"
#include "kinpart/particles.hpp"

namespace kinpart {

// F_i = sum_k w_k B_l(x_i - x_k) psi(v_k), periodic minimum-image distance.
// Particles are visited in index order so the reduction is deterministic.
template <class Psi>
GridField deposit(const ParticleEnsemble& ens, const SpatialGrid& grid, int order, Psi&& psi) {
    GridField out(grid);
    const double dx = grid.dx();
    const double lx = grid.lx;
    // Nodes with |x_i - x_k| <= (order+1) dx / 2 are at most this many away.
    // On very coarse grids the stencil covers the whole grid; visit each node
    // once in that case.
    int reach = order / 2 + 1;
    if (2 * reach + 1 > grid.nx) reach = grid.nx / 2;
    for (std::size_t k = 0; k < ens.np(); ++k) {
        const double contrib = ens.w[k] * psi(ens.v[k]);
        if (contrib == 0.0) continue;
        const int i0 = static_cast<int>(std::floor(ens.x[k] / dx + 0.5));
        for (int i = i0 - reach; i < i0 - reach + std::min(2 * reach + 1, grid.nx); ++i) {
            double d = grid.wrap(i) * dx - ens.x[k];
            d -= lx * std::round(d / lx);  // minimum image
            out[i] += contrib * bspline(order, d, dx);
        }
    }
    return out;
}

inline GridField deposit_density(const ParticleEnsemble& ens, const SpatialGrid& grid, int order) {
    return deposit(ens, grid, order, [](double) { return 1.0; });
}

inline GridField deposit_flux(const ParticleEnsemble& ens, const SpatialGrid& grid, int order) {
    return deposit(ens, grid, order, [](double v) { return v; });
}

// sum_i field_i B_l(x_i - x) dx; interpolation of a constant returns that
// constant (partition of unity of dx-normalized B-splines).
inline double interpolate(const GridField& field, double x, int order) {
    const double dx = field.grid.dx();
    const double lx = field.grid.lx;
    int reach = order / 2 + 1;
    if (2 * reach + 1 > field.grid.nx) reach = field.grid.nx / 2;
    const int i0 = static_cast<int>(std::floor(x / dx + 0.5));
    double s = 0.0;
    for (int i = i0 - reach; i < i0 - reach + std::min(2 * reach + 1, field.grid.nx); ++i) {
        double d = field.grid.wrap(i) * dx - x;
        d -= lx * std::round(d / lx);
        s += field[i] * bspline(order, d, dx);
    }
    return s * dx;
}

}  // namespace kinpart
