#include "kinpart/baselines.hpp"

#include <cmath>

#include "kinpart/deposit.hpp"
#include "kinpart/project.hpp"
#include "kinpart/tridiag.hpp"
#include "kinpart/vpbgk.hpp"

namespace kinpart {

GridField diffusion_cn_step(const GridField& rho, double dt, double sigma) {
    const SpatialGrid& grid = rho.grid;
    const GridField d2 = second_dx(rho);
    GridField rhs(grid);
    for (int i = 0; i < grid.nx; ++i)
        rhs[i] = rho[i] + 0.5 * dt * sigma * d2[i];
    const double r = 0.5 * dt * sigma / (grid.dx() * grid.dx());
    return cyclic_tridiag_solve(-r, 1.0 + 2.0 * r, -r, rhs);
}

GridField diffusion_implicit_step(const GridField& rho, double dt, double sigma) {
    const double r = dt * sigma / (rho.grid.dx() * rho.grid.dx());
    return cyclic_tridiag_solve(-r, 1.0 + 2.0 * r, -r, rho);
}

namespace {

GridField cn_drift_solve(const GridField& rho, const GridField& drift_E, const GridField& drift_rho,
                         double coeff) {
    const SpatialGrid& grid = rho.grid;
    const GridField d2 = second_dx(rho);
    const GridField drift = upwind_drift_div(drift_E, drift_rho);
    GridField rhs(grid);
    for (int i = 0; i < grid.nx; ++i)
        rhs[i] = rho[i] + coeff * (0.5 * d2[i] - drift[i]);
    const double r = 0.5 * coeff / (grid.dx() * grid.dx());
    return cyclic_tridiag_solve(-r, 1.0 + 2.0 * r, -r, rhs);
}

}  // namespace

void drift_diffusion_cn_step(GridField& rho, GridField& E, double dt) {
    const GridField rho_half = cn_drift_solve(rho, E, rho, 0.5 * dt);
    const GridField e_half = poisson_solve(rho_half);
    rho = cn_drift_solve(rho, e_half, rho_half, dt);
    E = poisson_solve(rho);
}

void full_pic_step(FullPicState& state, int spline_order) {
    ParticleEnsemble& ens = state.particles;
    const StiffCoeffs& c = state.coeffs;
    const SpatialGrid& grid = state.rho.grid;
    const double scale = grid.lx * state.model.lv() / static_cast<double>(ens.np());

    // transport
    for (std::size_t k = 0; k < ens.np(); ++k) {
        if (state.with_field) ens.v[k] += (c.dt / c.eps) * interpolate(state.E, ens.x[k], spline_order);
        ens.x[k] += (c.dt / c.eps) * ens.v[k];
    }
    wrap_positions(ens, grid.lx);

    // field solve from the transported density
    state.rho = deposit_density(ens, grid, spline_order);
    if (state.with_field) state.E = poisson_solve(state.rho);

    // exact exponential BGK relaxation toward rho M
    for (std::size_t k = 0; k < ens.np(); ++k) {
        const double target = interpolate(state.rho, ens.x[k], spline_order) *
                              state.model.maxwellian(ens.v[k]) * scale;
        ens.w[k] = c.a * ens.w[k] + (1.0 - c.a) * target;
    }

    // keep the total weight (mass) exact; Monte-Carlo noise would otherwise
    // drift it away from the Poisson-compatible value
    double total = 0.0;
    for (double w : ens.w) total += w;
    if (total != 0.0) {
        const double fac = state.total_weight / total;
        for (double& w : ens.w) w *= fac;
    }

    state.rho = deposit_density(ens, grid, spline_order);
    if (state.with_field) state.E = poisson_solve(state.rho);
    state.t += c.dt;
}

void mg_f_step(ParticleEnsemble& ens, const GridField& rho, const VelocityModel& model,
               const StiffCoeffs& coeffs, int spline_order) {
    const SpatialGrid& grid = rho.grid;
    const double trans = coeffs.eps * (1.0 - coeffs.a);
    const double scale = grid.lx * model.lv() / static_cast<double>(ens.np());
    for (std::size_t k = 0; k < ens.np(); ++k)
        ens.x[k] += trans * ens.v[k];
    wrap_positions(ens, grid.lx);
    for (std::size_t k = 0; k < ens.np(); ++k) {
        const double target = interpolate(rho, ens.x[k], spline_order) *
                              model.maxwellian(ens.v[k]) * scale;
        ens.w[k] = coeffs.a * ens.w[k] + (1.0 - coeffs.a) * target;
    }
}

GridField mg_rho_step(const GridField& rho, const GridField& vf_moment, const StiffCoeffs& coeffs,
                      double sigma) {
    const GridField d2 = second_dx(rho);
    const GridField dflux = centered_dx(vf_moment);
    GridField out(rho.grid);
    for (int i = 0; i < rho.grid.nx; ++i)
        out[i] = rho[i] + coeffs.diff1 * sigma * d2[i] -
                 (coeffs.dt / coeffs.eps) * coeffs.a * dflux[i];
    return out;
}

void mg_match(ParticleEnsemble& ens, const GridField& rho_target, const VelocityModel& model) {
    const SpatialGrid& grid = rho_target.grid;
    const double scale = grid.lx * model.lv() / static_cast<double>(ens.np());
    std::vector<double> beta(ens.np());
    for (std::size_t k = 0; k < ens.np(); ++k) {
        beta[k] = interpolate(rho_target, ens.x[k], 0) * model.maxwellian(ens.v[k]) * scale;
        ens.w[k] -= beta[k];  // gamma = w - beta
    }
    project(ens, grid, model);  // (I - Pi) gamma
    for (std::size_t k = 0; k < ens.np(); ++k)
        ens.w[k] += beta[k];
}

}  // namespace kinpart
