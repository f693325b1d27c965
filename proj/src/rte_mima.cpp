#include "kinpart/rte_mima.hpp"

#include <cmath>

#include "kinpart/deposit.hpp"
#include "kinpart/tridiag.hpp"

namespace kinpart {

namespace {

// <v^2> = 1/3 on [-1,1] with the RTE normalization.
constexpr double kV2Moment = 1.0 / 3.0;

bool weights_all_zero(const ParticleEnsemble& ens) {
    for (double w : ens.w)
        if (w != 0.0) return false;
    return true;
}

// Deep in the diffusion regime every exponential coefficient underflows to an
// exact zero and the micro update is identically zero; the particle loops can
// then be skipped without changing any output bit.
bool micro_dormant(const MicroMacroState& s) {
    const StiffCoeffs& c = s.coeffs;
    return c.a == 0.0 && c.c_pred == 0.0 && c.d_pred == 0.0 && c.c_corr == 0.0 &&
           weights_all_zero(s.micro);
}

GridField implicit_diffusion_solve(const GridField& rhs, double coeff, double dx) {
    const double r = coeff / (dx * dx);
    return cyclic_tridiag_solve(-r, 1.0 + 2.0 * r, -r, rhs);
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>>
micro_rhs(const GridField& rho, const GridField& flux, const ParticleEnsemble& ens,
          int spline_order, double scale) {
    const GridField drho = centered_dx(rho);
    const GridField dflux = centered_dx(flux);
    std::vector<double> alpha(ens.np()), beta(ens.np());
    for (std::size_t k = 0; k < ens.np(); ++k) {
        alpha[k] = ens.v[k] * interpolate(drho, ens.x[k], spline_order) * scale;
        beta[k] = -interpolate(dflux, ens.x[k], spline_order) * scale;
    }
    return {std::move(alpha), std::move(beta)};
}

void mima1_step(MicroMacroState& state, const RteOptions& opts) {
    const StiffCoeffs& c = state.coeffs;
    const SpatialGrid& grid = state.rho.grid;
    const double trans = c.eps * (1.0 - c.a);  // eps (1 - e^{-dt/eps^2})

    if (micro_dormant(state) && trans == 0.0) {
        state.rho = implicit_diffusion_solve(state.rho, c.diff1 * kV2Moment, grid.dx());
        state.t += c.dt;
        return;
    }

    ParticleEnsemble& ens = state.micro;
    const double scale = grid.lx * state.model.lv() / static_cast<double>(ens.np());

    // transport push to x^{n+1}
    for (std::size_t k = 0; k < ens.np(); ++k) ens.x[k] += trans * ens.v[k];
    wrap_positions(ens, grid.lx);

    // sources evaluated at the pushed positions, moments of g^n
    const GridField flux_n = deposit_flux(ens, grid, opts.spline_order);
    auto [alpha, beta] = micro_rhs(state.rho, flux_n, ens, opts.spline_order, scale);

    // h-term uses the pre-update weights and the beta weights at x^{n+1}
    ParticleEnsemble beta_ens;
    beta_ens.x = ens.x;
    beta_ens.v = ens.v;
    beta_ens.w = beta;
    const GridField beta_flux = deposit_flux(beta_ens, grid, opts.spline_order);
    GridField h(grid);
    for (int i = 0; i < grid.nx; ++i)
        h[i] = c.a * flux_n[i] - trans * beta_flux[i];

    for (std::size_t k = 0; k < ens.np(); ++k)
        ens.w[k] = c.a * ens.w[k] - trans * (alpha[k] + beta[k]);

    project_smooth(ens, grid, state.model, opts.spline_order);

    if (opts.explicit_macro) {
        const GridField flux_np1 = deposit_flux(ens, grid, opts.spline_order);
        const GridField dflux = centered_dx(flux_np1);
        for (int i = 0; i < grid.nx; ++i)
            state.rho[i] -= (c.dt / c.eps) * dflux[i];
    } else {
        const GridField dh = centered_dx(h);
        GridField rhs(grid);
        for (int i = 0; i < grid.nx; ++i)
            rhs[i] = state.rho[i] - (c.dt / c.eps) * dh[i];
        state.rho = implicit_diffusion_solve(rhs, c.diff1 * kV2Moment, grid.dx());
    }
    state.t += c.dt;
}

MimaHalfState mima2_predict(const MicroMacroState& state, const RteOptions& opts) {
    const StiffCoeffs& c = state.coeffs;
    const SpatialGrid& grid = state.rho.grid;
    const ParticleEnsemble& ens = state.micro;

    MimaHalfState half;
    if (micro_dormant(state)) {
        half.x_half = ens.x;
        half.w_half.assign(ens.np(), 0.0);
        half.rho_half = state.rho;
        half.flux_half = GridField(grid);
        return half;
    }

    const double scale = grid.lx * state.model.lv() / static_cast<double>(ens.np());

    // sources at the time-t^n positions, moments of g^n
    const GridField flux_n = deposit_flux(ens, grid, opts.spline_order);
    auto [alpha, beta] = micro_rhs(state.rho, flux_n, ens, opts.spline_order, scale);

    ParticleEnsemble half_ens;
    half_ens.x.resize(ens.np());
    half_ens.v = ens.v;
    half_ens.w.resize(ens.np());
    for (std::size_t k = 0; k < ens.np(); ++k) {
        half_ens.x[k] = ens.x[k] + c.c_pred * ens.v[k];
        half_ens.w[k] = c.d_pred * ens.w[k] - c.c_pred * (alpha[k] + beta[k]);
    }
    wrap_positions(half_ens, grid.lx);

    // the projection is first-order, so it is applied in the prediction only
    project_smooth(half_ens, grid, state.model, opts.spline_order);

    half.flux_half = deposit_flux(half_ens, grid, opts.spline_order);
    const GridField dflux = centered_dx(half.flux_half);
    half.rho_half = GridField(grid);
    for (int i = 0; i < grid.nx; ++i)
        half.rho_half[i] = state.rho[i] - (c.dt / (2.0 * c.eps)) * dflux[i];

    half.x_half = std::move(half_ens.x);
    half.w_half = std::move(half_ens.w);
    return half;
}

void mima2_correct(MicroMacroState& state, const MimaHalfState& half, const RteOptions& opts) {
    const StiffCoeffs& c = state.coeffs;
    const SpatialGrid& grid = state.rho.grid;
    ParticleEnsemble& ens = state.micro;
    const double cdiff = c.diff2 * kV2Moment;

    if (micro_dormant(state) && max_abs(half.flux_half) == 0.0) {
        GridField rhs(grid);
        const GridField d2rho = second_dx(state.rho);
        for (int i = 0; i < grid.nx; ++i)
            rhs[i] = state.rho[i] + 0.5 * cdiff * d2rho[i];
        state.rho = implicit_diffusion_solve(rhs, 0.5 * cdiff, grid.dx());
        state.t += c.dt;
        return;
    }

    const double scale = grid.lx * state.model.lv() / static_cast<double>(ens.np());

    // sources at the half-step positions, moments of g^{n+1/2}
    ParticleEnsemble eval;
    eval.x = half.x_half;
    eval.v = ens.v;
    eval.w = half.w_half;
    auto [alpha, beta] = micro_rhs(half.rho_half, half.flux_half, eval, opts.spline_order, scale);

    const double push = opts.plain_corrector_push ? c.c_corr : 2.0 * c.c_pred;
    for (std::size_t k = 0; k < ens.np(); ++k) {
        ens.w[k] = c.a * ens.w[k] - c.c_corr * (alpha[k] + beta[k]);
        ens.x[k] += push * ens.v[k];
    }
    wrap_positions(ens, grid.lx);

    // Crank-Nicolson macro update with the dt(1-a)^2 diffusion weight
    const GridField dflux = centered_dx(half.flux_half);
    const GridField d2rho = second_dx(state.rho);
    GridField rhs(grid);
    for (int i = 0; i < grid.nx; ++i)
        rhs[i] = state.rho[i] - (c.dt / c.eps) * dflux[i] + 0.5 * cdiff * d2rho[i];
    state.rho = implicit_diffusion_solve(rhs, 0.5 * cdiff, grid.dx());
    state.t += c.dt;
}

void mima2_step(MicroMacroState& state, const RteOptions& opts) {
    const MimaHalfState half = mima2_predict(state, opts);
    mima2_correct(state, half, opts);
}

}  // namespace kinpart
