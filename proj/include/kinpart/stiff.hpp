#pragma once

#include <stdexcept>

namespace kinpart {

// (eps, dt)-dependent exponential coefficients shared by every scheme.
// With x = dt/eps^2 and a = exp(-x):
//   b1     = eps (1 - a) / dt          transport/source coefficient, 1st order
//   c_pred = (dt/eps) e^{-x/2} / (1+a) prediction push coefficient
//   d_pred = 2a / (1+a)                prediction damping coefficient
//   c_corr = (dt/eps) e^{-x/2}         correction push coefficient
//   diff1  = dt (1 - a)                first-order diffusion weight
//   diff2  = dt (1 - a)^2              second-order (CN) diffusion weight
struct StiffCoeffs {
    double eps = 0.0;
    double dt = 0.0;
    double a = 0.0;
    double b1 = 0.0;
    double c_pred = 0.0;
    double d_pred = 0.0;
    double c_corr = 0.0;
    double diff1 = 0.0;
    double diff2 = 0.0;
};

StiffCoeffs stiff_coeffs(double eps, double dt);

}  // namespace kinpart
