#include "kinpart/tridiag.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace kinpart {

// Constant periodic stencils diagonalize in the discrete Fourier basis with
// eigenvalues lambda_m = main + sub e^{-i theta_m} + super e^{i theta_m},
// theta_m = 2 pi m / nx. Null modes (singular stencils such as (-1,2,-1)) are
// accepted only when the rhs has no component on them; the zero-mean solution
// is returned in that case.
GridField cyclic_tridiag_solve(double sub, double main_diag, double super, const GridField& rhs) {
    const int nx = rhs.grid.nx;
    const double two_pi = 6.283185307179586476925286766559;
    const double scale = std::abs(sub) + std::abs(main_diag) + std::abs(super);
    if (scale == 0.0) throw std::runtime_error("cyclic_tridiag_solve: zero matrix");

    std::vector<std::complex<double>> tw(static_cast<std::size_t>(nx));
    for (int t = 0; t < nx; ++t) {
        const double th = two_pi * t / nx;
        tw[static_cast<std::size_t>(t)] = {std::cos(th), std::sin(th)};
    }

    std::vector<std::complex<double>> rhat(static_cast<std::size_t>(nx));
    double rnorm = 0.0;
    for (int m = 0; m < nx; ++m) {
        std::complex<double> s(0.0, 0.0);
        for (int j = 0; j < nx; ++j)
            s += rhs[j] * std::conj(tw[static_cast<std::size_t>((m * j) % nx)]);
        rhat[static_cast<std::size_t>(m)] = s / static_cast<double>(nx);
        rnorm = std::max(rnorm, std::abs(rhs[m]));
    }

    std::vector<std::complex<double>> uhat(static_cast<std::size_t>(nx));
    for (int m = 0; m < nx; ++m) {
        const std::complex<double> w = tw[static_cast<std::size_t>(m)];
        const std::complex<double> lam = main_diag + sub * std::conj(w) + super * w;
        if (std::abs(lam) <= 1e-12 * scale) {
            if (std::abs(rhat[static_cast<std::size_t>(m)]) > 1e-10 * std::max(rnorm, 1e-300))
                throw std::runtime_error("cyclic_tridiag_solve: singular system, incompatible rhs");
            uhat[static_cast<std::size_t>(m)] = 0.0;
        } else {
            uhat[static_cast<std::size_t>(m)] = rhat[static_cast<std::size_t>(m)] / lam;
        }
    }

    GridField out(rhs.grid);
    for (int j = 0; j < nx; ++j) {
        std::complex<double> s(0.0, 0.0);
        for (int m = 0; m < nx; ++m)
            s += uhat[static_cast<std::size_t>(m)] * tw[static_cast<std::size_t>((m * j) % nx)];
        out[j] = s.real();
    }
    return out;
}

}  // namespace kinpart
