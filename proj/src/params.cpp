#include "mos/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mos {

void MicropolarParams::validate() const {
    for (double v : {r0, rk, rmu, rnu, rgamma}) {
        if (!std::isfinite(v) || v <= 0.0)
            throw std::invalid_argument("dimensionless numbers R0, Rk, Rmu, Rnu, Rgamma must be finite and positive");
    }
}

double DerivedParams::r_effective() const {
    if (!theorem1_applicable || !inv_r) throw std::logic_error("growth bound not applicable: r1 <= r2");
    return 1.0 / *inv_r;
}

DerivedParams derive(const MicropolarParams& p) {
    p.validate();
    DerivedParams d;
    d.r1 = std::min({1.0 / p.rmu, 1.0 / (2.0 * p.rk), p.r0 / p.rnu});
    d.r2 = std::max(p.r0 / (2.0 * p.rk), 1.0 / (2.0 * p.rnu));
    d.theorem1_applicable = d.r1 > d.r2;
    if (d.theorem1_applicable)
        d.inv_r = std::min({d.r1 - d.r2, 1.0 / p.rmu + 1.0 / (2.0 * p.rk), 1.0 / p.rgamma});
    d.viscous_condition = 1.0 / p.rmu + 1.0 / (2.0 * p.rk) > p.r0 / (2.0 * p.rk) + 1.0 / (2.0 * p.rnu);
    d.microrotation_condition = 2.0 * p.r0 / p.rnu > p.r0 / p.rk + 1.0 / p.rnu;
    return d;
}

MicropolarParams classical_limit(double reynolds) {
    if (!std::isfinite(reynolds) || reynolds <= 0.0) throw std::invalid_argument("reynolds must be positive");
    MicropolarParams p;
    p.r0 = 1.0;
    p.rk = 1e30 * reynolds;
    p.rmu = 1.0 / (1.0 / reynolds - 1.0 / (2.0 * p.rk));
    p.rnu = 1e20 * reynolds;
    p.rgamma = reynolds;
    return p;
}

PencilCoefficients PencilCoefficients::from(const MicropolarParams& p) {
    p.validate();
    PencilCoefficients c;
    c.viscous = 1.0 / p.rmu + 1.0 / (2.0 * p.rk);
    c.phi_coupling = p.r0 / p.rk;
    c.omega_coupling = 1.0 / p.rnu;
    c.omega_diffusion = 1.0 / p.rgamma;
    c.omega_damping = 2.0 * p.r0 / p.rnu;
    return c;
}

}  // namespace mos
