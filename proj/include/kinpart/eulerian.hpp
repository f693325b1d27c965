#pragma once

#include <vector>

#include "kinpart/grid.hpp"
#include "kinpart/stiff.hpp"
#include "kinpart/velocity.hpp"

namespace kinpart {

// Micro part g on staggered phase-space nodes (x_{i+1/2}, v_j) with midpoint
// velocity nodes v_j = v_lo + (j+1/2) dv.
struct PhaseSpaceGrid {
    SpatialGrid xgrid;
    int nv = 0;
    double v_lo = 0.0;
    double v_hi = 0.0;
    std::vector<double> vnodes;
    std::vector<double> g;  // row-major, g[i*nv + j]

    PhaseSpaceGrid() = default;
    PhaseSpaceGrid(const SpatialGrid& xg, int nv_, double v_lo_, double v_hi_);

    double dv() const { return (v_hi - v_lo) / nv; }
    double& at(int i, int j) { return g[static_cast<std::size_t>(xgrid.wrap(i)) * nv + j]; }
    double at(int i, int j) const { return g[static_cast<std::size_t>(xgrid.wrap(i)) * nv + j]; }
};

// Discrete equilibrium projection Pi h = (sum_j h dv) M(v_j) / (sum_j M dv),
// applied column by column; idempotent by construction.
PhaseSpaceGrid pi_apply(const PhaseSpaceGrid& psg, const VelocityModel& model);

// normalizer * sum_j psi(v_j) g_{i+1/2,j} dv, returned on the staggered nodes
// (entry i holds the moment at x_{i+1/2}).
template <class Psi>
std::vector<double> velocity_moment(const PhaseSpaceGrid& psg, const VelocityModel& model, Psi&& psi) {
    std::vector<double> out(static_cast<std::size_t>(psg.xgrid.nx), 0.0);
    const double w = model.moment_normalizer() * psg.dv();
    for (int i = 0; i < psg.xgrid.nx; ++i) {
        double s = 0.0;
        for (int j = 0; j < psg.nv; ++j) s += psi(psg.vnodes[static_cast<std::size_t>(j)]) * psg.at(i, j);
        out[static_cast<std::size_t>(i)] = w * s;
    }
    return out;
}

// Discrete diffusion constant normalizer * sum_j v_j^2 M(v_j) dv (-> 1/3 for
// the flat RTE model).
double discrete_v2_moment(const PhaseSpaceGrid& psg, const VelocityModel& model);

struct EulerianState {
    GridField rho;
    PhaseSpaceGrid micro;
    GridField E;  // empty unless with_field
    VelocityModel model;
    StiffCoeffs coeffs;
    double t = 0.0;
    bool with_field = false;
};

struct EulerianOptions {
    // Explicit macro flux (no diffusion manoeuvre); subject to the parabolic
    // time-step restriction, kept for the stability comparison.
    bool explicit_macro = false;
};

struct EulerMicroResult {
    std::vector<double> g_new;  // same layout as PhaseSpaceGrid::g
    std::vector<double> h;      // manoeuvre remainder term
};

EulerMicroResult euler_micro_step(const EulerianState& state);
void euler_macro_step(EulerianState& state, const EulerMicroResult& micro, const EulerianOptions& opts);
void euler_step(EulerianState& state, const EulerianOptions& opts);

}  // namespace kinpart
