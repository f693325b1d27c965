#include "kinpart/vpbgk.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kinpart/deposit.hpp"
#include "kinpart/project.hpp"
#include "kinpart/tridiag.hpp"

namespace kinpart {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<std::complex<double>> dft(const GridField& f) {
    const int nx = f.grid.nx;
    std::vector<std::complex<double>> out(static_cast<std::size_t>(nx));
    for (int m = 0; m < nx; ++m) {
        std::complex<double> s(0.0, 0.0);
        for (int j = 0; j < nx; ++j) {
            const double th = -kTwoPi * ((m * j) % nx) / nx;
            s += f[j] * std::complex<double>(std::cos(th), std::sin(th));
        }
        out[static_cast<std::size_t>(m)] = s / static_cast<double>(nx);
    }
    return out;
}

GridField idft_real(const std::vector<std::complex<double>>& fhat, const SpatialGrid& grid) {
    const int nx = grid.nx;
    GridField out(grid);
    for (int j = 0; j < nx; ++j) {
        std::complex<double> s(0.0, 0.0);
        for (int m = 0; m < nx; ++m) {
            const double th = kTwoPi * ((m * j) % nx) / nx;
            s += fhat[static_cast<std::size_t>(m)] * std::complex<double>(std::cos(th), std::sin(th));
        }
        out[j] = s.real();
    }
    return out;
}

// Signed wavenumber of DFT bin m; the Nyquist bin carries no odd derivative
// information for real data and is mapped to zero.
double wavenumber(int m, int nx, double lx) {
    int mm = m <= nx / 2 ? m : m - nx;
    if (2 * m == nx) mm = 0;
    return kTwoPi * mm / lx;
}

}  // namespace

GridField spectral_dx(const GridField& f) {
    auto fhat = dft(f);
    const int nx = f.grid.nx;
    for (int m = 0; m < nx; ++m) {
        const double k = wavenumber(m, nx, f.grid.lx);
        fhat[static_cast<std::size_t>(m)] *= std::complex<double>(0.0, k);
    }
    return idft_real(fhat, f.grid);
}

GridField poisson_solve(const GridField& rho) {
    const int nx = rho.grid.nx;
    double defect = 0.0;
    for (int i = 0; i < nx; ++i) defect += rho[i] - 1.0;
    defect *= rho.grid.dx();
    if (std::abs(defect) > 1e-8) {
        std::ostringstream msg;
        msg << "poisson_solve: incompatible density, integral of (rho - 1) dx = " << defect
            << " (must vanish)";
        throw std::runtime_error(msg.str());
    }

    auto rhat = dft(rho);
    std::vector<std::complex<double>> ehat(static_cast<std::size_t>(nx), {0.0, 0.0});
    for (int m = 1; m < nx; ++m) {
        const double k = wavenumber(m, nx, rho.grid.lx);
        if (k == 0.0) continue;  // Nyquist
        ehat[static_cast<std::size_t>(m)] =
            rhat[static_cast<std::size_t>(m)] / std::complex<double>(0.0, k);
    }
    return idft_real(ehat, rho.grid);
}

GridField upwind_drift_div(const GridField& E, const GridField& rho) {
    GridField out(rho.grid);
    const double invdx = 1.0 / (rho.grid.dx());
    for (int i = 0; i < rho.grid.nx; ++i) {
        const double ep = std::max(E[i], 0.0), em = std::min(E[i], 0.0);
        const double epm1 = std::max(E[i - 1], 0.0), emm1 = std::min(E[i - 1], 0.0);
        out[i] = (ep * rho[i] + em * rho[i + 1] - epm1 * rho[i - 1] - emm1 * rho[i]) * invdx;
    }
    return out;
}

namespace {

bool weights_all_zero(const ParticleEnsemble& ens) {
    for (double w : ens.w)
        if (w != 0.0) return false;
    return true;
}

bool micro_dormant(const VPState& s) {
    const StiffCoeffs& c = s.coeffs;
    return c.a == 0.0 && c.c_pred == 0.0 && c.d_pred == 0.0 && c.c_corr == 0.0 &&
           weights_all_zero(s.micro);
}

GridField cn_drift_diffusion_solve(const GridField& rho, const GridField& flux_term,
                                   const GridField& drift_E, const GridField& drift_rho,
                                   double coeff) {
    // Solve rho' = rho + coeff * (D2 (rho' + rho)/2 - upwind_div(E*drift_rho)) - flux_term
    const SpatialGrid& grid = rho.grid;
    const GridField d2 = second_dx(rho);
    const GridField drift = upwind_drift_div(drift_E, drift_rho);
    GridField rhs(grid);
    for (int i = 0; i < grid.nx; ++i)
        rhs[i] = rho[i] + coeff * (0.5 * d2[i] - drift[i]) - flux_term[i];
    const double r = 0.5 * coeff / (grid.dx() * grid.dx());
    return cyclic_tridiag_solve(-r, 1.0 + 2.0 * r, -r, rhs);
}

}  // namespace

VPHalfState vp_predict(const VPState& state, const VPOptions& opts) {
    const StiffCoeffs& c = state.coeffs;
    const SpatialGrid& grid = state.rho.grid;
    const ParticleEnsemble& ens = state.micro;

    VPHalfState half;
    half.flux_half = GridField(grid);

    if (micro_dormant(state)) {
        half.x_half = ens.x;
        half.v_half = ens.v;
        half.w_half.assign(ens.np(), 0.0);
    } else {
        const double scale = grid.lx * state.model.lv() / static_cast<double>(ens.np());
        const int l = opts.spline_order;

        const GridField flux_n = deposit_flux(ens, grid, l);
        const GridField drho = centered_dx(state.rho);
        const GridField dflux = centered_dx(flux_n);

        ParticleEnsemble half_ens;
        half_ens.resize(ens.np());
        for (std::size_t k = 0; k < ens.np(); ++k) {
            const double xk = ens.x[k], vk = ens.v[k];
            const double mv = state.model.maxwellian(vk);
            const double en = interpolate(state.E, xk, l);
            const double source = (vk * mv * interpolate(drho, xk, l) -
                                   mv * interpolate(dflux, xk, l) -
                                   vk * mv * en * interpolate(state.rho, xk, l)) *
                                  scale;
            half_ens.w[k] = c.d_pred * ens.w[k] - c.c_pred * source;
            half_ens.x[k] = xk + c.c_pred * vk;
            half_ens.v[k] = vk + c.c_pred * en;
        }
        wrap_positions(half_ens, grid.lx);
        project_smooth(half_ens, grid, state.model, l);

        half.flux_half = deposit_flux(half_ens, grid, l);
        half.x_half = std::move(half_ens.x);
        half.v_half = std::move(half_ens.v);
        half.w_half = std::move(half_ens.w);
    }

    // macro half-step: CN diffusion over dt/2 with weight (dt/2)(1-a),
    // explicit upwind drift with E^n rho^n
    const double ch = 0.5 * c.diff1;  // (dt/2)(1-a)
    const GridField dflux_half = centered_dx(half.flux_half);
    GridField flux_term(grid);
    for (int i = 0; i < grid.nx; ++i)
        flux_term[i] = (c.dt / (2.0 * c.eps)) * dflux_half[i];
    half.rho_half = cn_drift_diffusion_solve(state.rho, flux_term, state.E, state.rho, ch);
    half.E_half = poisson_solve(half.rho_half);
    return half;
}

void vp_correct(VPState& state, const VPHalfState& half, const VPOptions& opts) {
    const StiffCoeffs& c = state.coeffs;
    const SpatialGrid& grid = state.rho.grid;
    ParticleEnsemble& ens = state.micro;

    if (!(micro_dormant(state) && max_abs(half.flux_half) == 0.0)) {
        const double scale = grid.lx * state.model.lv() / static_cast<double>(ens.np());
        const int l = opts.spline_order;
        const double push = opts.rte_style_corrector_push ? c.c_corr : 2.0 * c.c_pred;

        const GridField drho_half = centered_dx(half.rho_half);
        const GridField dflux_half = centered_dx(half.flux_half);

        for (std::size_t k = 0; k < ens.np(); ++k) {
            const double xh = half.x_half[k], vh = half.v_half[k];
            const double mv = state.model.maxwellian(vh);
            const double eh = interpolate(half.E_half, xh, l);
            const double source = (vh * mv * interpolate(drho_half, xh, l) -
                                   mv * interpolate(dflux_half, xh, l) -
                                   vh * mv * eh * interpolate(half.rho_half, xh, l)) *
                                  scale;
            ens.w[k] = c.a * ens.w[k] - c.c_corr * source;
            ens.x[k] += push * vh;
            ens.v[k] += push * eh;
        }
        wrap_positions(ens, grid.lx);
    }

    const GridField dflux_half = centered_dx(half.flux_half);
    GridField flux_term(grid);
    for (int i = 0; i < grid.nx; ++i)
        flux_term[i] = (c.dt / c.eps) * dflux_half[i];
    state.rho = cn_drift_diffusion_solve(state.rho, flux_term, half.E_half, half.rho_half, c.diff2);
    state.E = poisson_solve(state.rho);
    state.t += c.dt;
}

void vp_step(VPState& state, const VPOptions& opts) {
    const VPHalfState half = vp_predict(state, opts);
    vp_correct(state, half, opts);
}

}  // namespace kinpart
