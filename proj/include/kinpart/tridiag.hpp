#pragma once

#include "kinpart/grid.hpp"

namespace kinpart {

// Solve the periodic constant-stencil tridiagonal system
//   sub * u_{i-1} + main * u_i + super * u_{i+1} = rhs_i  (indices mod nx)
// by diagonalization in the discrete Fourier basis. Throws std::runtime_error
// when a null eigenmode carries a nonzero rhs component (incompatible singular
// system); for compatible singular systems the zero-mean solution is returned.
GridField cyclic_tridiag_solve(double sub, double main_diag, double super, const GridField& rhs);

}  // namespace kinpart
