#pragma once

#include "kinpart/grid.hpp"
#include "kinpart/particles.hpp"
#include "kinpart/stiff.hpp"
#include "kinpart/velocity.hpp"

namespace kinpart {

// Crank-Nicolson step of d_t rho = sigma d_xx rho (sigma = 1/3 for the RTE
// limit), periodic implicit solve.
GridField diffusion_cn_step(const GridField& rho, double dt, double sigma = 1.0 / 3.0);

// Backward-Euler step of the same equation; the degeneracy target of the
// first-order schemes.
GridField diffusion_implicit_step(const GridField& rho, double dt, double sigma = 1.0 / 3.0);

// One step of the drift-diffusion limit d_t rho - d_x(d_x rho - E rho) = 0,
// realized as the exact eps -> 0 degeneracy of the second-order particle
// scheme: a CN half-step predictor with upwind drift at (E^n, rho^n) followed
// by a CN full step with upwind drift at the half-step values. E is refreshed
// from the Poisson solve after each stage.
void drift_diffusion_cn_step(GridField& rho, GridField& E, double dt);

// Full PIC: markers carry f itself. Transport push, field refresh (VP case),
// then exact exponential relaxation of the weights toward rho M. Total weight
// is rescaled to its initial value to keep the Poisson solve compatible.
struct FullPicState {
    ParticleEnsemble particles;
    GridField rho;
    GridField E;  // used when with_field
    VelocityModel model;
    StiffCoeffs coeffs;
    double t = 0.0;
    bool with_field = false;
    double total_weight = 0.0;  // set at init, preserved by rescaling
};

void full_pic_step(FullPicState& state, int spline_order);

// Moment-guided particle transport/relaxation sub-steps and the moment
// matching correction.
void mg_f_step(ParticleEnsemble& ens, const GridField& rho, const VelocityModel& model,
               const StiffCoeffs& coeffs, int spline_order);
GridField mg_rho_step(const GridField& rho, const GridField& vf_moment, const StiffCoeffs& coeffs,
                      double sigma);
// Match the deposited density of the ensemble to rho_target cell by cell.
void mg_match(ParticleEnsemble& ens, const GridField& rho_target, const VelocityModel& model);

}  // namespace kinpart
