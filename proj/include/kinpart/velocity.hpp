#pragma once

#include <cmath>

namespace kinpart {

enum class VelocityKind { FlatRTE, MaxwellianVP };

// Velocity-space model: the equilibrium M(v), the (possibly truncated) domain
// and the normalizer entering <h> = normalizer * integral of h over the domain.
struct VelocityModel {
    VelocityKind kind = VelocityKind::FlatRTE;
    double v_lo = -1.0;
    double v_hi = 1.0;

    static VelocityModel flat_rte() { return VelocityModel{VelocityKind::FlatRTE, -1.0, 1.0}; }

    static VelocityModel maxwellian_vp(double v_max = 6.0) {
        return VelocityModel{VelocityKind::MaxwellianVP, -v_max, v_max};
    }

    double maxwellian(double v) const {
        if (kind == VelocityKind::FlatRTE) return 1.0;
        return 0.3989422804014327 * std::exp(-0.5 * v * v);  // 1/sqrt(2 pi)
    }

    double moment_normalizer() const {
        return kind == VelocityKind::FlatRTE ? 0.5 : 1.0;
    }

    // |V|, enters the particle weight formula w = g * Lx * Lv / Np.
    double lv() const { return v_hi - v_lo; }
};

}  // namespace kinpart
