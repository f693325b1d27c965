#include "kinpart/grid.hpp"

#include <cmath>

namespace kinpart {

GridField centered_dx(const GridField& f) {
    GridField out(f.grid);
    const int nx = f.grid.nx;
    const double inv2dx = 1.0 / (2.0 * f.grid.dx());
    for (int i = 0; i < nx; ++i)
        out[i] = (f[i + 1] - f[i - 1]) * inv2dx;
    return out;
}

GridField second_dx(const GridField& f) {
    GridField out(f.grid);
    const int nx = f.grid.nx;
    const double invdx2 = 1.0 / (f.grid.dx() * f.grid.dx());
    for (int i = 0; i < nx; ++i)
        out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * invdx2;
    return out;
}

double max_abs(const GridField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double mass(const GridField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid.dx();
}

}  // namespace kinpart
