#pragma once

#include <optional>

namespace mos {

/// Dimensionless numbers R0, Rk, Rmu, Rnu, Rgamma of the micropolar disturbance equations.
struct MicropolarParams {
    double r0 = 1.0;
    double rk = 1.0;
    double rmu = 1.0;
    double rnu = 1.0;
    double rgamma = 1.0;

    /// Throws std::invalid_argument unless all five are finite and strictly positive.
    void validate() const;
};

/// Growth-bound quantities built from MicropolarParams.
///
///   r1    = min{1/Rmu, 1/(2Rk), R0/Rnu}
///   r2    = max{R0/(2Rk), 1/(2Rnu)}
///   inv_r = min{r1 - r2, 1/Rmu + 1/(2Rk), 1/Rgamma}, present only when r1 > r2.
///
/// r1 == r2 is treated as not applicable.
struct DerivedParams {
    double r1 = 0;
    double r2 = 0;
    std::optional<double> inv_r;
    bool theorem1_applicable = false;

    /// The two strict inequalities the energy argument actually uses:
    ///   1/Rmu + 1/(2Rk) > R0/(2Rk) + 1/(2Rnu)   and   2R0/Rnu > R0/Rk + 1/Rnu.
    /// The first follows from r1 > r2; the second does not (see tests).
    bool viscous_condition = false;
    bool microrotation_condition = false;

    /// R = 1/inv_r; throws std::logic_error when not applicable.
    double r_effective() const;
};

DerivedParams derive(const MicropolarParams& params);

/// Relative size of the coupling terms left in a classical-limit parameter set.
inline constexpr double kClassicalDecouplingTol = 1e-14;

/// Parameters for which the stream-function equation reduces to the classical
/// Orr-Sommerfeld operator with viscous coefficient 1/reynolds. Coupling
/// coefficients are kept nonzero but below kClassicalDecouplingTol of the
/// viscous one; the microrotation diffuses with 1/reynolds.
MicropolarParams classical_limit(double reynolds);

/// Coefficients multiplying each operator block of the disturbance equations.
struct PencilCoefficients {
    double viscous = 0;          // 1/Rmu + 1/(2Rk), multiplies (D^2 - a^2)^2 phi
    double phi_coupling = 0;     // R0/Rk, multiplies (D^2 - a^2) omega in the phi equation
    double omega_coupling = 0;   // 1/Rnu, multiplies (D^2 - a^2) phi in the omega equation
    double omega_diffusion = 0;  // 1/Rgamma
    double omega_damping = 0;    // 2 R0/Rnu

    static PencilCoefficients from(const MicropolarParams& params);
};

}  // namespace mos
