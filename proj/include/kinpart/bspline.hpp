#pragma once

#include <cmath>
#include <stdexcept>

namespace kinpart {

// Centered B-spline of order l on a grid of spacing dx, normalized to unit
// integral: B_l = B_0 * B_{l-1}, B_0 = 1/dx on |x| < dx/2. Support is
// |x| <= (l+1) dx / 2.
inline double bspline(int order, double x, double dx) {
    const double t = std::abs(x) / dx;
    double b = 0.0;
    switch (order) {
        case 0:
            b = t < 0.5 ? 1.0 : 0.0;
            break;
        case 1:
            b = t < 1.0 ? 1.0 - t : 0.0;
            break;
        case 2:
            if (t < 0.5)
                b = 0.75 - t * t;
            else if (t < 1.5)
                b = 0.5 * (1.5 - t) * (1.5 - t);
            break;
        case 3:
            if (t < 1.0)
                b = 2.0 / 3.0 - t * t + 0.5 * t * t * t;
            else if (t < 2.0)
                b = (2.0 - t) * (2.0 - t) * (2.0 - t) / 6.0;
            break;
        default:
            throw std::invalid_argument("bspline: order must be in {0,1,2,3}");
    }
    return b / dx;
}

}  // namespace kinpart
