#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace kinpart {

// Weighted marker set sampling the micro part g (or the full f for Full PIC).
struct ParticleEnsemble {
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> w;

    std::size_t np() const { return x.size(); }

    void resize(std::size_t n) {
        x.assign(n, 0.0);
        v.assign(n, 0.0);
        w.assign(n, 0.0);
    }
};

// Wrap all positions into [0, lx).
inline void wrap_positions(ParticleEnsemble& ens, double lx) {
    for (double& xk : ens.x) {
        xk = std::fmod(xk, lx);
        if (xk < 0.0) xk += lx;
        if (xk >= lx) xk = 0.0;  // fmod can return lx after the negative fixup
    }
}

inline double max_abs_weight(const ParticleEnsemble& ens) {
    double m = 0.0;
    for (double wk : ens.w) m = std::max(m, std::abs(wk));
    return m;
}

}  // namespace kinpart
