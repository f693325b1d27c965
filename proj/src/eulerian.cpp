#include "kinpart/eulerian.hpp"

#include <cmath>
#include <stdexcept>

#include "kinpart/tridiag.hpp"
#include "kinpart/vpbgk.hpp"

namespace kinpart {

PhaseSpaceGrid::PhaseSpaceGrid(const SpatialGrid& xg, int nv_, double v_lo_, double v_hi_)
    : xgrid(xg), nv(nv_), v_lo(v_lo_), v_hi(v_hi_) {
    if (nv < 2) throw std::invalid_argument("PhaseSpaceGrid: nv must be >= 2");
    if (!(v_hi > v_lo)) throw std::invalid_argument("PhaseSpaceGrid: empty velocity domain");
    vnodes.resize(static_cast<std::size_t>(nv));
    for (int j = 0; j < nv; ++j)
        vnodes[static_cast<std::size_t>(j)] = v_lo + (j + 0.5) * dv();
    g.assign(static_cast<std::size_t>(xgrid.nx) * nv, 0.0);
}

namespace {

double maxwellian_mass(const PhaseSpaceGrid& psg, const VelocityModel& model) {
    double s = 0.0;
    for (double v : psg.vnodes) s += model.maxwellian(v);
    return s * psg.dv();
}

}  // namespace

PhaseSpaceGrid pi_apply(const PhaseSpaceGrid& psg, const VelocityModel& model) {
    PhaseSpaceGrid out = psg;
    const double mmass = maxwellian_mass(psg, model);
    for (int i = 0; i < psg.xgrid.nx; ++i) {
        double mean = 0.0;
        for (int j = 0; j < psg.nv; ++j) mean += psg.at(i, j);
        mean *= psg.dv() / mmass;
        for (int j = 0; j < psg.nv; ++j)
            out.at(i, j) = mean * model.maxwellian(psg.vnodes[static_cast<std::size_t>(j)]);
    }
    return out;
}

double discrete_v2_moment(const PhaseSpaceGrid& psg, const VelocityModel& model) {
    double s = 0.0;
    for (double v : psg.vnodes) s += v * v * model.maxwellian(v);
    return model.moment_normalizer() * s * psg.dv();
}

EulerMicroResult euler_micro_step(const EulerianState& state) {
    const PhaseSpaceGrid& psg = state.micro;
    const SpatialGrid& xg = psg.xgrid;
    const StiffCoeffs& c = state.coeffs;
    const int nx = xg.nx, nv = psg.nv;
    const double dx = xg.dx(), dv = psg.dv();
    const double trans = c.eps * (1.0 - c.a);
    const double mmass = maxwellian_mass(psg, state.model);

    // transport part v+ D-g + v- D+g (+ E dv g for the field case), before Pi
    std::vector<double> tr(static_cast<std::size_t>(nx) * nv, 0.0);
    for (int i = 0; i < nx; ++i) {
        const double e_mid = state.with_field ? 0.5 * (state.E[i] + state.E[i + 1]) : 0.0;
        for (int j = 0; j < nv; ++j) {
            const double vj = psg.vnodes[static_cast<std::size_t>(j)];
            const double dminus = (psg.at(i, j) - psg.at(i - 1, j)) / dx;
            const double dplus = (psg.at(i + 1, j) - psg.at(i, j)) / dx;
            double s = std::max(vj, 0.0) * dminus + std::min(vj, 0.0) * dplus;
            if (state.with_field) {
                const double gp = j + 1 < nv ? psg.at(i, j + 1) : 0.0;
                const double gm = j > 0 ? psg.at(i, j - 1) : 0.0;
                s += e_mid * (gp - gm) / (2.0 * dv);
            }
            tr[static_cast<std::size_t>(xg.wrap(i)) * nv + j] = s;
        }
    }

    EulerMicroResult res;
    res.g_new.assign(static_cast<std::size_t>(nx) * nv, 0.0);
    res.h.assign(static_cast<std::size_t>(nx) * nv, 0.0);

    for (int i = 0; i < nx; ++i) {
        // (I - Pi) of the transport column
        double mean = 0.0;
        for (int j = 0; j < nv; ++j) mean += tr[static_cast<std::size_t>(i) * nv + j];
        mean *= dv / mmass;

        const double drho = (state.rho[i + 1] - state.rho[i]) / dx;
        const double e_mid = state.with_field ? 0.5 * (state.E[i] + state.E[i + 1]) : 0.0;
        const double rho_mid = 0.5 * (state.rho[i] + state.rho[i + 1]);

        for (int j = 0; j < nv; ++j) {
            const double vj = psg.vnodes[static_cast<std::size_t>(j)];
            const double mj = state.model.maxwellian(vj);
            const double ipi_tr = tr[static_cast<std::size_t>(i) * nv + j] - mean * mj;
            double src = vj * mj * drho + ipi_tr;
            if (state.with_field) src -= vj * mj * e_mid * rho_mid;
            const std::size_t idx = static_cast<std::size_t>(i) * nv + j;
            res.g_new[idx] = c.a * psg.g[idx] - trans * src;
            res.h[idx] = c.a * psg.g[idx] - trans * ipi_tr;
        }
    }
    return res;
}

void euler_macro_step(EulerianState& state, const EulerMicroResult& micro, const EulerianOptions& opts) {
    const PhaseSpaceGrid& psg = state.micro;
    const SpatialGrid& xg = psg.xgrid;
    const StiffCoeffs& c = state.coeffs;
    const int nx = xg.nx, nv = psg.nv;
    const double dx = xg.dx();
    const double norm_dv = state.model.moment_normalizer() * psg.dv();

    // flux divergence of the h term: normalizer * sum_j v_j (h_{i+1/2} - h_{i-1/2})/dx dv
    auto flux_div = [&](const std::vector<double>& field) {
        GridField out(xg);
        for (int i = 0; i < nx; ++i) {
            double s = 0.0;
            const std::size_t ip = static_cast<std::size_t>(xg.wrap(i)) * nv;
            const std::size_t im = static_cast<std::size_t>(xg.wrap(i - 1)) * nv;
            for (int j = 0; j < nv; ++j)
                s += psg.vnodes[static_cast<std::size_t>(j)] * (field[ip + j] - field[im + j]);
            out[i] = norm_dv * s / dx;
        }
        return out;
    };

    if (opts.explicit_macro) {
        const GridField div = flux_div(micro.g_new);
        for (int i = 0; i < nx; ++i)
            state.rho[i] -= (c.dt / c.eps) * div[i];
    } else {
        const double sigma = discrete_v2_moment(psg, state.model);
        const GridField div = flux_div(micro.h);
        GridField rhs(xg);
        if (state.with_field) {
            const GridField drift = upwind_drift_div(state.E, state.rho);
            for (int i = 0; i < nx; ++i)
                rhs[i] = state.rho[i] - c.diff1 * sigma * drift[i] - (c.dt / c.eps) * div[i];
        } else {
            for (int i = 0; i < nx; ++i)
                rhs[i] = state.rho[i] - (c.dt / c.eps) * div[i];
        }
        const double r = c.diff1 * sigma / (dx * dx);
        state.rho = cyclic_tridiag_solve(-r, 1.0 + 2.0 * r, -r, rhs);
    }

    state.micro.g = micro.g_new;
    if (state.with_field) state.E = poisson_solve(state.rho);
    state.t += c.dt;
}

void euler_step(EulerianState& state, const EulerianOptions& opts) {
    const EulerMicroResult micro = euler_micro_step(state);
    euler_macro_step(state, micro, opts);
}

}  // namespace kinpart
