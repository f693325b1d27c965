#pragma once

#include <vector>

#include "kinpart/grid.hpp"
#include "kinpart/particles.hpp"
#include "kinpart/stiff.hpp"
#include "kinpart/velocity.hpp"

namespace kinpart {

// Micro-macro state for the Vlasov-Poisson-BGK system; particle velocities
// evolve under the electric field.
struct VPState {
    GridField rho;
    GridField E;
    ParticleEnsemble micro;
    VelocityModel model;
    StiffCoeffs coeffs;
    double t = 0.0;
};

struct VPOptions {
    int spline_order = 1;
    // Use the RTE-style corrector push coefficient (dt/eps) e^{-dt/2eps^2}
    // instead of the displayed 2 dt e^{-dt/2eps^2} / (eps (1+a)).
    bool rte_style_corrector_push = false;
};

// Spectral antiderivative of rho - 1 with zero-mean E. Throws when
// |integral of (rho - 1)| exceeds 1e-8, naming the violated compatibility.
GridField poisson_solve(const GridField& rho);

// Spectral derivative; the convention under which the Poisson residual is
// checked.
GridField spectral_dx(const GridField& f);

// Upwind divergence of the drift flux E*rho:
// (E_i^+ rho_i + E_i^- rho_{i+1} - E_{i-1}^+ rho_{i-1} - E_{i-1}^- rho_i)/dx.
GridField upwind_drift_div(const GridField& E, const GridField& rho);

struct VPHalfState {
    std::vector<double> x_half;
    std::vector<double> v_half;
    std::vector<double> w_half;
    GridField rho_half;
    GridField E_half;
    GridField flux_half;  // <v g^{n+1/2}> at the half-step positions
};

VPHalfState vp_predict(const VPState& state, const VPOptions& opts);
void vp_correct(VPState& state, const VPHalfState& half, const VPOptions& opts);
void vp_step(VPState& state, const VPOptions& opts);

}  // namespace kinpart
