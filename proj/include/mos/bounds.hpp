#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mos/baseflow.hpp"
#include "mos/eigensolve.hpp"
#include "mos/params.hpp"
#include "mos/spectral.hpp"

namespace mos {

/// Clamped-beam constant rounded to three digits, the default in the threshold formulas.
inline constexpr double kBeamRootShort = 4.73;
/// First positive root of cosh(x) cos(x) = 1.
inline constexpr double kBeamRootExact = 4.730040744862704;

/// Which version of the energy identities to evaluate.
///
/// `consistent` is the identity obtained by pairing the assembled equations
/// with conj(phi) and conj(omega): microrotation damping enters C_i with a
/// negative sign, the W' part of Q pairs W' omega with conj(phi), and C_r
/// carries the coupling term (R0/(a Rk) - 1/(a Rnu)) Im<omega, (D^2 - a^2) phi>.
/// `literal` flips the damping sign, transposes the W' pairing and omits that C_r term; it agrees
/// with the spectrum only when W' = 0, R0/Rnu = 0 and R0/Rk = 1/Rnu.
enum class IdentityForm { consistent, literal };

/// Quadrature norms and pairings of (phi, omega) shared by every identity.
struct ModeIntegrals {
    double phi = 0, dphi = 0, d2phi = 0;  // ||phi||^2, ||phi'||^2, ||phi''||^2
    double omega = 0, domega = 0;         // ||omega||^2, ||omega'||^2
    std::complex<double> coupling;        // X = <omega, phi''> - a^2 <omega, phi>
    double energy(double alpha) const { return dphi + alpha * alpha * phi + omega; }
};

ModeIntegrals mode_integrals(const GridFunction& phi, const GridFunction& omega, double alpha,
                             const SpectralOperator& op);

/// Q = (i/2) int (U' phi conj(phi') - W' omega conj(phi)) dy for `consistent`,
/// with W' phi conj(omega) in the second term for `literal`.
std::complex<double> q_functional(const GridFunction& phi, const GridFunction& omega, const BaseFlow& flow,
                                  const SpectralOperator& op, IdentityForm form = IdentityForm::consistent);

/// Imaginary part of C reconstructed from (phi, omega) through the energy identity.
/// Throws std::domain_error when ||phi'||^2 + a^2 ||phi||^2 + ||omega||^2 < 1e-12.
double identity_ci(const GridFunction& phi, const GridFunction& omega, const BaseFlow& flow,
                   const PencilCoefficients& coeffs, double alpha, const SpectralOperator& op,
                   IdentityForm form = IdentityForm::consistent);

/// Real part of C reconstructed from (phi, omega).
double identity_cr(const GridFunction& phi, const GridFunction& omega, const BaseFlow& flow,
                   const PencilCoefficients& coeffs, double alpha, const SpectralOperator& op,
                   IdentityForm form = IdentityForm::consistent);

/// (phi, omega) interpolated onto a grid of order 2N, where the quadrature
/// integrates every product of two degree-N interpolants exactly.
struct ExactQuadrature {
    std::shared_ptr<const SpectralOperator> op;
    Eigen::MatrixXd interpolation;  // coarse nodes -> fine nodes

    explicit ExactQuadrature(const SpectralOperator& coarse);
    GridFunction lift(const GridFunction& f) const { return interpolation * f; }
};

struct IdentityReport {
    double ci_direct = 0, ci_identity = 0;
    double cr_direct = 0, cr_identity = 0;
    std::complex<double> q_value;
    double rel_err_ci = 0, rel_err_cr = 0;  // |direct - identity| / (1 + |C|)
};

/// Identities for one mode, evaluated with exact product quadrature.
IdentityReport identity_report(const Mode& mode, const EigenProblem& problem,
                               IdentityForm form = IdentityForm::consistent);

struct StabilityThresholds {
    double m1 = 0, m2 = 0, n1 = 0, n2 = 0;
    double f_alpha = 0, g_alpha = 0;
};

///   M1 = b^2 pi + 2 a^2 pi,      M2 = b^2 pi + 2^(3/2) a^3,
///   N1 = 2 b^2 pi + 2 a^3,       N2 = 2 b^2 pi + 2^(3/2) a pi,
/// f = max(M1, M2), g = max(N1, N2), with b the beam constant.
StabilityThresholds thresholds(double alpha, double beam_root = kBeamRootShort);

/// Upper bound on C_i: (q1 + q2)/(2a) - (pi^2 + a^2) inv_r / a.
/// Throws std::logic_error when the bound is not applicable (r1 <= r2).
double theorem1_bound(double alpha, const DerivedParams& derived, const FlowExtrema& extrema);

enum class CertificatePolicy {
    as_stated,     // a R q1 < f(a) and a R q2 < g(a)
    conservative,  // a R q1 <= f(a)/2 and a R q2 <= g(a)/2
};

/// True when no amplified disturbance can exist under the chosen policy.
bool stability_certificate(double alpha, double r_effective, double q1, double q2,
                           CertificatePolicy policy = CertificatePolicy::conservative,
                           double beam_root = kBeamRootShort);

struct WaveSpeedInterval {
    double lower = 0;
    double upper = 0;
    char case_label = 'a';           // first applicable case
    std::string applicable_cases;    // every case whose hypotheses hold, e.g. "abdegh"
};

/// The published interval for a single case (a)..(i), hypotheses not checked.
WaveSpeedInterval wave_speed_case(char label, double alpha, const FlowExtrema& extrema);

/// Intersection of the intervals of every case whose sign hypotheses hold
/// (non-strictly) for the given extrema.
WaveSpeedInterval wave_speed_interval(double alpha, const FlowExtrema& extrema);

struct InequalityCheck {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;  // lhs - rhs
    bool pass = false;
};

struct InequalityFindings {
    std::vector<InequalityCheck> checks;
    bool pass = false;
};

/// Poincare-type and Young-type inequalities for a clamped phi and a Dirichlet
/// omega. A check passes when slack >= -1e-9 max(|lhs|, |rhs|).
/// Throws std::invalid_argument when the boundary conditions fail by more than 1e-8 (relative).
InequalityFindings functional_inequalities(const GridFunction& phi, const GridFunction& omega, double alpha,
                                           const SpectralOperator& op, double beam_root = kBeamRootShort);

struct GammaThresholds {
    double gamma1 = 0;
    std::optional<double> gamma2;  // absent when omega = 0
    StabilityThresholds thresholds;
    bool gamma1_ok = false;        // gamma1 >= f(a) (relative tolerance 1e-9)
    bool gamma2_ok = false;        // gamma2 >= g(a), vacuously true when omega = 0
};

/// Gamma1 = S / (||phi|| ||phi'||), Gamma2 = S / (||phi|| ||omega||) with
/// S = ||phi''||^2 + 2a^2||phi'||^2 + a^4||phi||^2 + ||omega'||^2 + (a^2 + 1)||omega||^2.
/// Throws std::domain_error when phi = 0.
GammaThresholds gamma_thresholds(const GridFunction& phi, const GridFunction& omega, double alpha,
                                 const SpectralOperator& op, double beam_root = kBeamRootShort);

struct Finding {
    std::optional<std::size_t> mode_index;
    std::string check;
    double slack = 0;  // negative means violated by that amount
    std::string detail;
};

struct BoundsOptions {
    double identity_tol = 1e-6;  // relative to 1 + |C|
    double bound_tol = 1e-8;
    double interval_tol = 1e-8;
    IdentityForm form = IdentityForm::consistent;
    CertificatePolicy policy = CertificatePolicy::conservative;
    double beam_root = kBeamRootShort;
    /// Evaluate every integral on the order-2N grid (ExactQuadrature) rather
    /// than with the N-point rule, which is not exact for products of modes.
    bool exact_quadrature = true;
};

struct BoundsReport {
    double alpha = 0;
    std::vector<IdentityReport> identities;
    /// Largest relative identity error of the literal form (informational).
    double literal_form_max_rel_err_ci = 0;
    double literal_form_max_rel_err_cr = 0;

    DerivedParams derived;
    FlowExtrema extrema;
    std::optional<double> max_ci;
    std::optional<double> theorem1_bound;  // absent when not applicable
    std::optional<double> r_effective;
    bool certificate_as_stated = false;
    bool certificate_conservative = false;
    bool stability_certified = false;      // under the configured policy
    WaveSpeedInterval interval;
    std::size_t inequality_checks = 0;
    std::vector<Finding> violations;

    bool ok() const { return violations.empty(); }
};

/// Runs every check on a filtered solution: identities per mode, the growth
/// bound against the largest C_i, both certificate policies, wave-speed
/// interval membership and the functional inequalities of each mode.
BoundsReport evaluate_all(const EigenSolution& solution, const BaseFlow& flow, const MicropolarParams& params,
                          const SpectralOperator& op, const BoundsOptions& options = {});

}  // namespace mos
