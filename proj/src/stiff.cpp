#include "kinpart/stiff.hpp"

#include <cmath>

namespace kinpart {

StiffCoeffs stiff_coeffs(double eps, double dt) {
    if (!(eps > 0.0)) throw std::invalid_argument("stiff_coeffs: eps must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("stiff_coeffs: dt must be > 0");

    StiffCoeffs c;
    c.eps = eps;
    c.dt = dt;
    const double x = dt / (eps * eps);
    c.a = std::exp(-x);
    const double one_minus_a = -std::expm1(-x);  // stable 1 - e^{-x}
    c.b1 = eps * one_minus_a / dt;
    const double ehalf = std::exp(-0.5 * x);
    c.c_pred = (dt / eps) * ehalf / (1.0 + c.a);
    c.d_pred = 2.0 * c.a / (1.0 + c.a);
    c.c_corr = (dt / eps) * ehalf;
    c.diff1 = dt * one_minus_a;
    c.diff2 = dt * one_minus_a * one_minus_a;
    return c;
}

}  // namespace kinpart
