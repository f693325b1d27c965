#pragma once

#include <utility>
#include <vector>

#include "kinpart/grid.hpp"
#include "kinpart/particles.hpp"
#include "kinpart/project.hpp"
#include "kinpart/stiff.hpp"
#include "kinpart/velocity.hpp"

namespace kinpart {

// Micro-macro state for the radiative transport equation: grid density rho and
// the kinetic remainder g carried by weighted particles.
struct MicroMacroState {
    GridField rho;
    ParticleEnsemble micro;
    VelocityModel model;
    StiffCoeffs coeffs;
    double t = 0.0;
};

struct RteOptions {
    int spline_order = 1;
    // Explicit macro update (the non-manoeuvred flux form); kept for the
    // degeneracy comparison, the implicit update is the default.
    bool explicit_macro = false;
    // Corrector position push of the second-order scheme. The default
    // 2*c_pred = (2 dt/eps) e^{-dt/2eps^2}/(1+a) is the exact one-step
    // integral of the reformulated transport coefficient and keeps the scheme
    // second order; the plain (dt/eps) e^{-dt/2eps^2} push agrees with it only
    // to O(dt) and costs one order of accuracy. Kept for comparison.
    bool plain_corrector_push = false;
};

// Per-particle source terms alpha_k = v_k d_x rho(x_k) * scale and
// beta_k = -d_x flux(x_k) * scale, grid derivatives by centered differences,
// point evaluation by B-spline interpolation of the given order.
std::pair<std::vector<double>, std::vector<double>>
micro_rhs(const GridField& rho, const GridField& flux, const ParticleEnsemble& ens,
          int spline_order, double scale);

// One step of the first-order particle scheme (transport push, exponential
// weight update, projection, implicit macro update).
void mima1_step(MicroMacroState& state, const RteOptions& opts);

// Prediction half-state of the second-order scheme.
struct MimaHalfState {
    std::vector<double> x_half;
    std::vector<double> w_half;
    GridField rho_half;
    GridField flux_half;  // <v g^{n+1/2}> deposited at the half-step positions
};

MimaHalfState mima2_predict(const MicroMacroState& state, const RteOptions& opts);
void mima2_correct(MicroMacroState& state, const MimaHalfState& half, const RteOptions& opts);

// Full prediction-correction step.
void mima2_step(MicroMacroState& state, const RteOptions& opts);

}  // namespace kinpart
