#pragma once

#include "kinpart/grid.hpp"
#include "kinpart/particles.hpp"
#include "kinpart/velocity.hpp"

namespace kinpart {

// Discrete (I - Pi) on particle weights: in each grid cell
// C_i = [x_i - dx/2, x_i + dx/2) the Maxwellian-weighted cell mean is
// subtracted, w_k <- w_k - M(v_k) * (sum_j w_j) / (sum_j M(v_j)).
// After the call every nonempty cell has zero weight sum; the operator is
// idempotent. Cells where sum M(v_j) vanishes but the weight sum does not are
// left untouched; the returned counter reports how many such cells were seen.
int project(ParticleEnsemble& ens, const SpatialGrid& grid, const VelocityModel& model);

// Smooth variant of (I - Pi): subtracts the B-spline density estimate,
// w_k <- w_k - <g>(x_k) M(v_k) Lx Lv / Np with <g> interpolated from
// deposit_density. Unlike the per-cell version above, the correction is a
// continuous function of the particle positions, so it does not inject the
// O(1)-in-dt reassignment jumps of a crossing particle into the weights; the
// time-stepping schemes rely on this to keep their convergence order. Cell
// sums vanish only approximately.
void project_smooth(ParticleEnsemble& ens, const SpatialGrid& grid, const VelocityModel& model,
                    int spline_order);

}  // namespace kinpart
