#pragma once

#include <stdexcept>
#include <vector>

namespace kinpart {

// Uniform periodic spatial grid, nodes x_i = i*dx, i = 0..nx-1, x_nx == x_0.
struct SpatialGrid {
    int nx = 0;
    double lx = 0.0;

    SpatialGrid() = default;
    SpatialGrid(int nx_, double lx_) : nx(nx_), lx(lx_) {
        if (nx < 4) throw std::invalid_argument("SpatialGrid: nx must be >= 4");
        if (lx <= 0.0) throw std::invalid_argument("SpatialGrid: lx must be > 0");
    }

    double dx() const { return lx / nx; }
    double node(int i) const { return wrap(i) * dx(); }
    int wrap(int i) const {
        int r = i % nx;
        return r < 0 ? r + nx : r;
    }
    bool operator==(const SpatialGrid& o) const { return nx == o.nx && lx == o.lx; }
};

// Scalar field on the nodes of a SpatialGrid.
struct GridField {
    SpatialGrid grid;
    std::vector<double> values;

    GridField() = default;
    explicit GridField(const SpatialGrid& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.nx), fill) {}

    double& operator[](int i) { return values[static_cast<std::size_t>(grid.wrap(i))]; }
    double operator[](int i) const { return values[static_cast<std::size_t>(grid.wrap(i))]; }
    int size() const { return grid.nx; }
};

// Centered first difference, (D rho)_i = (rho_{i+1} - rho_{i-1}) / (2 dx), periodic.
GridField centered_dx(const GridField& f);

// Standard second difference, (rho_{i+1} - 2 rho_i + rho_{i-1}) / dx^2, periodic.
GridField second_dx(const GridField& f);

double max_abs(const GridField& f);

// Sum_i f_i * dx, the discrete mass.
double mass(const GridField& f);

}  // namespace kinpart
