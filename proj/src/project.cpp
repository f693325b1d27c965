#include "kinpart/project.hpp"

#include <cmath>
#include <vector>

#include "kinpart/deposit.hpp"

namespace kinpart {

int project(ParticleEnsemble& ens, const SpatialGrid& grid, const VelocityModel& model) {
    const int nx = grid.nx;
    const double dx = grid.dx();
    std::vector<double> wsum(static_cast<std::size_t>(nx), 0.0);
    std::vector<double> msum(static_cast<std::size_t>(nx), 0.0);
    std::vector<int> cell(ens.np());

    for (std::size_t k = 0; k < ens.np(); ++k) {
        const int i = grid.wrap(static_cast<int>(std::floor(ens.x[k] / dx + 0.5)));
        cell[k] = i;
        wsum[static_cast<std::size_t>(i)] += ens.w[k];
        msum[static_cast<std::size_t>(i)] += model.maxwellian(ens.v[k]);
    }

    int degenerate = 0;
    std::vector<double> factor(static_cast<std::size_t>(nx), 0.0);
    for (int i = 0; i < nx; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (msum[ui] == 0.0) {
            if (wsum[ui] != 0.0) ++degenerate;
            continue;
        }
        factor[ui] = wsum[ui] / msum[ui];
    }

    for (std::size_t k = 0; k < ens.np(); ++k)
        ens.w[k] -= model.maxwellian(ens.v[k]) * factor[static_cast<std::size_t>(cell[k])];

    return degenerate;
}

void project_smooth(ParticleEnsemble& ens, const SpatialGrid& grid, const VelocityModel& model,
                    int spline_order) {
    const GridField density = deposit_density(ens, grid, spline_order);
    const double scale = grid.lx * model.lv() / static_cast<double>(ens.np());
    const double norm = model.moment_normalizer();
    for (std::size_t k = 0; k < ens.np(); ++k)
        ens.w[k] -=
            norm * interpolate(density, ens.x[k], spline_order) * model.maxwellian(ens.v[k]) * scale;
}

}  // namespace kinpart
