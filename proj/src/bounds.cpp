#include "mos/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mos {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateEnergy = 1e-12;

Eigen::VectorXcd profile_on_nodes(const Polynomial& p, const SpectralOperator& op) {
    const Eigen::ArrayXd y = op.nodes().array();
    return p(y).matrix().cast<std::complex<double>>();
}

void check_pair(const GridFunction& phi, const GridFunction& omega, const SpectralOperator& op) {
    op.check_length(phi.size());
    op.check_length(omega.size());
}

std::string format_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

}  // namespace

ModeIntegrals mode_integrals(const GridFunction& phi, const GridFunction& omega, double alpha,
                             const SpectralOperator& op) {
    check_pair(phi, omega, op);
    const GridFunction dphi = op.d1() * phi;
    const GridFunction d2phi = op.d2() * phi;
    ModeIntegrals out;
    out.phi = norm_sq(phi, op);
    out.dphi = norm_sq(dphi, op);
    out.d2phi = norm_sq(d2phi, op);
    out.omega = norm_sq(omega, op);
    out.domega = norm_sq(op.d1() * omega, op);
    out.coupling = inner_product(omega, d2phi, op) - alpha * alpha * inner_product(omega, phi, op);
    return out;
}

std::complex<double> q_functional(const GridFunction& phi, const GridFunction& omega, const BaseFlow& flow,
                                  const SpectralOperator& op, IdentityForm form) {
    check_pair(phi, omega, op);
    const Eigen::VectorXcd up = profile_on_nodes(flow.du(), op);
    const Eigen::VectorXcd wp = profile_on_nodes(flow.dw(), op);
    const GridFunction dphi = op.d1() * phi;
    const GridFunction shear = up.cwiseProduct(phi);
    const GridFunction spin = wp.cwiseProduct(form == IdentityForm::consistent ? omega : phi);
    const std::complex<double> integral =
        inner_product(shear, dphi, op) - inner_product(spin, form == IdentityForm::consistent ? phi : omega, op);
    return std::complex<double>(0.0, 0.5) * integral;
}

double identity_ci(const GridFunction& phi, const GridFunction& omega, const BaseFlow& flow,
                   const PencilCoefficients& c, double alpha, const SpectralOperator& op, IdentityForm form) {
    if (!(alpha > 0.0)) throw std::invalid_argument("wave number alpha must be positive");
    const ModeIntegrals s = mode_integrals(phi, omega, alpha, op);
    const double den = s.energy(alpha);
    if (!(den >= kDegenerateEnergy))
        throw std::domain_error("degenerate energy denominator " + format_double(den));
    const double a2 = alpha * alpha;
    const double viscous_energy = s.d2phi + 2.0 * a2 * s.dphi + a2 * a2 * s.phi;
    const double spin_energy = s.domega + a2 * s.omega;
    const std::complex<double> q = q_functional(phi, omega, flow, op, form);
    const std::complex<double> i(0.0, 1.0);
    // The second pairing is <phi'' - a^2 phi, omega> = conj(X).
    const std::complex<double> bracket =
        i * (c.phi_coupling / alpha) * s.coupling + i * (c.omega_coupling / alpha) * std::conj(s.coupling);
    const double damping_sign = form == IdentityForm::consistent ? -1.0 : 1.0;
    const double num = 2.0 * q.real() - (c.viscous / alpha) * viscous_energy -
                       (c.omega_diffusion / alpha) * spin_energy +
                       damping_sign * (c.omega_damping / alpha) * s.omega - bracket.imag();
    return num / den;
}

double identity_cr(const GridFunction& phi, const GridFunction& omega, const BaseFlow& flow,
                   const PencilCoefficients& c, double alpha, const SpectralOperator& op, IdentityForm form) {
    if (!(alpha > 0.0)) throw std::invalid_argument("wave number alpha must be positive");
    const ModeIntegrals s = mode_integrals(phi, omega, alpha, op);
    const double den = s.energy(alpha);
    if (!(den >= kDegenerateEnergy))
        throw std::domain_error("degenerate energy denominator " + format_double(den));
    const Eigen::ArrayXd y = op.nodes().array();
    const Eigen::ArrayXd u = flow.u()(y);
    const Eigen::ArrayXd upp = flow.d2u()(y);
    const Eigen::ArrayXd wp = flow.dw()(y);
    const Eigen::ArrayXd dphi_sq = (op.d1() * phi).cwiseAbs2().array();
    const Eigen::ArrayXd phi_sq = phi.cwiseAbs2().array();
    const Eigen::ArrayXd om_sq = omega.cwiseAbs2().array();
    const Eigen::ArrayXd cross = (phi.array() * omega.conjugate().array()).real();
    const Eigen::VectorXd integrand =
        (u * dphi_sq + (alpha * alpha * u + 0.5 * upp) * phi_sq + u * om_sq - wp * cross).matrix();
    double num = op.integrate(integrand);
    if (form == IdentityForm::consistent)
        num += (c.phi_coupling - c.omega_coupling) / alpha * s.coupling.imag();
    return num / den;
}

ExactQuadrature::ExactQuadrature(const SpectralOperator& coarse)
    : op(std::make_shared<const SpectralOperator>(2 * coarse.order())),
      interpolation(interpolation_matrix(coarse, op->nodes())) {}

namespace {

IdentityReport make_identity_report(const Mode& mode, const GridFunction& phi, const GridFunction& omega,
                                    const BaseFlow& flow, const PencilCoefficients& coeffs, double alpha,
                                    const SpectralOperator& op, IdentityForm form) {
    IdentityReport r;
    r.ci_direct = mode.c.imag();
    r.cr_direct = mode.c.real();
    r.ci_identity = identity_ci(phi, omega, flow, coeffs, alpha, op, form);
    r.cr_identity = identity_cr(phi, omega, flow, coeffs, alpha, op, form);
    r.q_value = q_functional(phi, omega, flow, op, form);
    const double scale = 1.0 + std::abs(mode.c);
    r.rel_err_ci = std::abs(r.ci_direct - r.ci_identity) / scale;
    r.rel_err_cr = std::abs(r.cr_direct - r.cr_identity) / scale;
    return r;
}

}  // namespace

IdentityReport identity_report(const Mode& mode, const EigenProblem& problem, IdentityForm form) {
    const ExactQuadrature exact(*problem.op);
    return make_identity_report(mode, exact.lift(mode.phi), exact.lift(mode.omega), problem.flow, problem.coeffs,
                                problem.alpha, *exact.op, form);
}

StabilityThresholds thresholds(double alpha, double beam_root) {
    if (!(alpha > 0.0)) throw std::invalid_argument("wave number alpha must be positive");
    const double b2pi = beam_root * beam_root * kPi;
    const double a3 = alpha * alpha * alpha;
    StabilityThresholds t;
    t.m1 = b2pi + 2.0 * alpha * alpha * kPi;
    t.m2 = b2pi + 2.0 * std::numbers::sqrt2 * a3;
    t.n1 = 2.0 * b2pi + 2.0 * a3;
    t.n2 = 2.0 * b2pi + 2.0 * std::numbers::sqrt2 * alpha * kPi;
    t.f_alpha = std::max(t.m1, t.m2);
    t.g_alpha = std::max(t.n1, t.n2);
    return t;
}

double theorem1_bound(double alpha, const DerivedParams& derived, const FlowExtrema& ex) {
    if (!(alpha > 0.0)) throw std::invalid_argument("wave number alpha must be positive");
    if (!derived.theorem1_applicable || !derived.inv_r)
        throw std::logic_error("growth bound requires r1 > r2 (r1 = " + format_double(derived.r1) +
                               ", r2 = " + format_double(derived.r2) + ")");
    return (ex.q1 + ex.q2) / (2.0 * alpha) - (kPi * kPi + alpha * alpha) * *derived.inv_r / alpha;
}

bool stability_certificate(double alpha, double r_effective, double q1, double q2, CertificatePolicy policy,
                           double beam_root) {
    if (!(alpha > 0.0)) throw std::invalid_argument("wave number alpha must be positive");
    if (!(r_effective > 0.0) || !std::isfinite(r_effective))
        throw std::logic_error("certificate requires a finite positive effective R");
    if (!(q1 >= 0.0) || !(q2 >= 0.0)) throw std::invalid_argument("q1 and q2 must be non-negative");
    const StabilityThresholds t = thresholds(alpha, beam_root);
    const double s1 = alpha * r_effective * q1;
    const double s2 = alpha * r_effective * q2;
    if (policy == CertificatePolicy::as_stated) return s1 < t.f_alpha && s2 < t.g_alpha;
    return s1 <= 0.5 * t.f_alpha && s2 <= 0.5 * t.g_alpha;
}

WaveSpeedInterval wave_speed_case(char label, double alpha, const FlowExtrema& e) {
    if (!(alpha > 0.0)) throw std::invalid_argument("wave number alpha must be positive");
    const double a = alpha;
    const double a2 = alpha * alpha;
    const double curv_hi = e.upp_max / (2.0 * (kPi * kPi + a2));
    WaveSpeedInterval w;
    w.case_label = label;
    w.applicable_cases = std::string(1, label);
    switch (label) {
        case 'a':
            w.lower = e.u_min - e.wp_max / (2 * a);
            w.upper = e.u_max + curv_hi + e.wp_max / (2 * a);
            break;
        case 'b':
            w.lower = e.u_min - e.wp_max / a + e.wp_min / (2 * a);
            w.upper = e.u_max + curv_hi - e.wp_min / a + e.wp_max / (2 * a);
            break;
        case 'c':
            w.lower = e.u_min + e.wp_min / (2 * a);
            w.upper = e.u_max + curv_hi - e.wp_min / (2 * a);
            break;
        case 'd':
            w.lower = e.u_min + e.upp_min / (2 * a2) - e.wp_max / (2 * a);
            w.upper = e.u_max + curv_hi + e.wp_max / (2 * a);
            break;
        case 'e':
            w.lower = e.u_min + e.upp_min / (2 * a2) - e.wp_max / a + e.wp_min / (2 * a);
            w.upper = e.u_max + curv_hi - e.wp_min / a + e.wp_max / (2 * a);
            break;
        case 'f':
            w.lower = e.u_min + e.upp_min / (2 * a2) + e.wp_min / (2 * a);
            w.upper = e.u_max + e.upp_max / (2 * a2) - e.wp_min / (2 * a);
            break;
        case 'g':
            w.lower = e.u_min + e.upp_min / (2 * a2) - e.wp_max / (2 * a);
            w.upper = e.u_max + e.wp_max / (2 * a);
            break;
        case 'h':
            w.lower = e.u_min + e.upp_min / (2 * a2) - e.wp_max / a + e.wp_min / (2 * a);
            w.upper = e.u_max - e.wp_min / a + e.wp_max / (2 * a);
            break;
        case 'i':
            w.lower = e.u_min + e.upp_min / (2 * a2) + e.wp_min / (2 * a);
            w.upper = e.u_max - e.wp_min / (2 * a);
            break;
        default:
            throw std::invalid_argument(std::string("unknown wave-speed case '") + label + "'");
    }
    return w;
}

WaveSpeedInterval wave_speed_interval(double alpha, const FlowExtrema& e) {
    // Rows: curvature hypothesis on U''; columns: sign hypothesis on W'.
    const bool u_group[3] = {e.upp_min >= 0.0, e.upp_min <= 0.0 && e.upp_max >= 0.0, e.upp_max <= 0.0};
    const bool w_group[3] = {e.wp_min >= 0.0, e.wp_min <= 0.0 && e.wp_max >= 0.0, e.wp_max <= 0.0};
    WaveSpeedInterval out;
    out.lower = -std::numeric_limits<double>::infinity();
    out.upper = std::numeric_limits<double>::infinity();
    for (int ui = 0; ui < 3; ++ui) {
        for (int wi = 0; wi < 3; ++wi) {
            if (!u_group[ui] || !w_group[wi]) continue;
            const char label = static_cast<char>('a' + 3 * ui + wi);
            const WaveSpeedInterval w = wave_speed_case(label, alpha, e);
            if (out.applicable_cases.empty()) out.case_label = label;
            out.applicable_cases.push_back(label);
            out.lower = std::max(out.lower, w.lower);
            out.upper = std::min(out.upper, w.upper);
        }
    }
    // Every extrema tuple satisfies at least one hypothesis in each group.
    return out;
}

namespace {

double sup_norm(const GridFunction& f) { return f.size() ? f.cwiseAbs().maxCoeff() : 0.0; }

void require_boundary_conditions(const GridFunction& phi, const GridFunction& omega, const SpectralOperator& op) {
    constexpr double tol = 1e-8;
    const Eigen::Index last = op.size() - 1;
    const GridFunction dphi = op.d1() * phi;
    // One joint scale: omega-dominated modes carry a tiny phi.
    const double scale = std::max({sup_norm(phi), sup_norm(omega), sup_norm(dphi)});
    const double dscale = scale;
    const double worst_value = std::max({std::abs(phi(0)), std::abs(phi(last)), std::abs(omega(0)),
                                         std::abs(omega(last))});
    const double worst_slope = std::max(std::abs(dphi(0)), std::abs(dphi(last)));
    if (worst_value > tol * scale || worst_slope > tol * dscale)
        throw std::invalid_argument("inputs violate the clamped/Dirichlet boundary conditions (value " +
                                    format_double(worst_value) + ", slope " + format_double(worst_slope) + ")");
}

InequalityCheck make_check(std::string name, double lhs, double rhs) {
    InequalityCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = lhs - rhs;
    c.pass = c.slack >= -1e-9 * std::max(std::abs(lhs), std::abs(rhs));
    return c;
}

double gamma_numerator(const ModeIntegrals& s, double alpha) {
    const double a2 = alpha * alpha;
    return s.d2phi + 2.0 * a2 * s.dphi + a2 * a2 * s.phi + s.domega + (a2 + 1.0) * s.omega;
}

}  // namespace

InequalityFindings functional_inequalities(const GridFunction& phi, const GridFunction& omega, double alpha,
                                           const SpectralOperator& op, double beam_root) {
    check_pair(phi, omega, op);
    if (!(alpha > 0.0)) throw std::invalid_argument("wave number alpha must be positive");
    require_boundary_conditions(phi, omega, op);
    const ModeIntegrals s = mode_integrals(phi, omega, alpha, op);
    const double pi2 = kPi * kPi;
    const double a2 = alpha * alpha;
    const double den = s.energy(alpha);
    const double n_phi = std::sqrt(s.phi);
    const double n_dphi = std::sqrt(s.dphi);
    const double n_om = std::sqrt(s.omega);
    const double spin = s.d2phi + 2.0 * a2 * s.dphi + a2 * a2 * s.phi + s.domega + (a2 + 1.0) * s.omega;

    InequalityFindings out;
    out.checks.push_back(make_check("poincare_phi", s.dphi, pi2 * s.phi));
    out.checks.push_back(make_check("poincare_dphi", s.d2phi, pi2 * s.dphi));
    out.checks.push_back(make_check("clamped_beam", s.d2phi, std::pow(beam_root, 4) * s.phi));
    out.checks.push_back(make_check("young_phi_dphi", den, 2.0 * alpha * n_dphi * n_phi));
    out.checks.push_back(make_check("young_phi_omega", den, 2.0 * alpha * n_phi * n_om));
    out.checks.push_back(make_check("dissipation_energy", spin, (pi2 + a2) * den));
    out.pass = std::all_of(out.checks.begin(), out.checks.end(), [](const InequalityCheck& c) { return c.pass; });
    return out;
}

GammaThresholds gamma_thresholds(const GridFunction& phi, const GridFunction& omega, double alpha,
                                 const SpectralOperator& op, double beam_root) {
    check_pair(phi, omega, op);
    if (!(alpha > 0.0)) throw std::invalid_argument("wave number alpha must be positive");
    const ModeIntegrals s = mode_integrals(phi, omega, alpha, op);
    const double num = gamma_numerator(s, alpha);
    const double d1 = std::sqrt(s.phi) * std::sqrt(s.dphi);
    if (!(d1 > 0.0)) throw std::domain_error("gamma quotients need a nonzero phi");
    GammaThresholds g;
    g.thresholds = thresholds(alpha, beam_root);
    g.gamma1 = num / d1;
    g.gamma1_ok = g.gamma1 >= g.thresholds.f_alpha * (1.0 - 1e-9);
    const double d2 = std::sqrt(s.phi) * std::sqrt(s.omega);
    if (d2 > 0.0) {
        g.gamma2 = num / d2;
        g.gamma2_ok = *g.gamma2 >= g.thresholds.g_alpha * (1.0 - 1e-9);
    } else {
        g.gamma2_ok = true;
    }
    return g;
}

BoundsReport evaluate_all(const EigenSolution& solution, const BaseFlow& flow, const MicropolarParams& params,
                          const SpectralOperator& op, const BoundsOptions& options) {
    if (!solution.problem) throw std::invalid_argument("solution carries no eigenproblem");
    const EigenProblem& problem = *solution.problem;
    const double alpha = problem.alpha;
    const PencilCoefficients coeffs = problem.coeffs;
    const IdentityForm literal = IdentityForm::literal;

    BoundsReport r;
    r.alpha = alpha;
    r.derived = derive(params);
    r.extrema = extrema(flow);
    r.max_ci = solution.max_ci();
    r.interval = wave_speed_interval(alpha, r.extrema);

    auto flag = [&](std::optional<std::size_t> idx, std::string check, double slack, std::string detail) {
        r.violations.push_back(Finding{idx, std::move(check), slack, std::move(detail)});
    };

    std::optional<ExactQuadrature> exact;
    if (options.exact_quadrature && !solution.modes.empty()) exact.emplace(op);
    const SpectralOperator& qop = exact ? *exact->op : op;

    for (std::size_t k = 0; k < solution.modes.size(); ++k) {
        const Mode& m = solution.modes[k];
        const double scale = 1.0 + std::abs(m.c);
        const GridFunction phi = exact ? exact->lift(m.phi) : m.phi;
        const GridFunction omega = exact ? exact->lift(m.omega) : m.omega;
        const IdentityReport id = make_identity_report(m, phi, omega, flow, coeffs, alpha, qop, options.form);
        if (id.rel_err_ci > options.identity_tol)
            flag(k, "identity_ci", options.identity_tol - id.rel_err_ci,
                 "direct " + format_double(id.ci_direct) + " vs identity " + format_double(id.ci_identity));
        if (id.rel_err_cr > options.identity_tol)
            flag(k, "identity_cr", options.identity_tol - id.rel_err_cr,
                 "direct " + format_double(id.cr_direct) + " vs identity " + format_double(id.cr_identity));
        r.identities.push_back(id);

        if (options.form != literal) {
            const double pci = identity_ci(phi, omega, flow, coeffs, alpha, qop, literal);
            const double pcr = identity_cr(phi, omega, flow, coeffs, alpha, qop, literal);
            r.literal_form_max_rel_err_ci = std::max(r.literal_form_max_rel_err_ci, std::abs(pci - m.c.imag()) / scale);
            r.literal_form_max_rel_err_cr = std::max(r.literal_form_max_rel_err_cr, std::abs(pcr - m.c.real()) / scale);
        } else {
            r.literal_form_max_rel_err_ci = std::max(r.literal_form_max_rel_err_ci, id.rel_err_ci);
            r.literal_form_max_rel_err_cr = std::max(r.literal_form_max_rel_err_cr, id.rel_err_cr);
        }

        const double lo = r.interval.lower - options.interval_tol;
        const double hi = r.interval.upper + options.interval_tol;
        if (m.c.real() < lo || m.c.real() > hi)
            flag(k, "wave_speed_interval", std::min(m.c.real() - lo, hi - m.c.real()),
                 "C_r " + format_double(m.c.real()) + " outside [" + format_double(r.interval.lower) + ", " +
                     format_double(r.interval.upper) + "] (case " + r.interval.case_label + ")");

        try {
            const InequalityFindings ineq = functional_inequalities(phi, omega, alpha, qop, options.beam_root);
            for (const InequalityCheck& c : ineq.checks) {
                ++r.inequality_checks;
                if (!c.pass) flag(k, "inequality_" + c.name, c.slack, "lhs " + format_double(c.lhs) + " rhs " +
                                                                           format_double(c.rhs));
            }
        } catch (const std::invalid_argument& e) {
            flag(k, "inequality_preconditions", -1.0, e.what());
        }
    }

    if (r.derived.theorem1_applicable) {
        const double reff = r.derived.r_effective();
        r.r_effective = reff;
        r.theorem1_bound = theorem1_bound(alpha, r.derived, r.extrema);
        if (r.max_ci && *r.max_ci > *r.theorem1_bound + options.bound_tol)
            flag(std::nullopt, "theorem1_bound", *r.theorem1_bound - *r.max_ci,
                 "max C_i " + format_double(*r.max_ci) + " exceeds bound " + format_double(*r.theorem1_bound));
        r.certificate_as_stated = stability_certificate(alpha, reff, r.extrema.q1, r.extrema.q2,
                                                        CertificatePolicy::as_stated, options.beam_root);
        r.certificate_conservative = stability_certificate(alpha, reff, r.extrema.q1, r.extrema.q2,
                                                           CertificatePolicy::conservative, options.beam_root);
        r.stability_certified = options.policy == CertificatePolicy::as_stated ? r.certificate_as_stated
                                                                               : r.certificate_conservative;
        if (r.stability_certified && r.max_ci && *r.max_ci > options.bound_tol)
            flag(std::nullopt, "stability_certificate", -*r.max_ci,
                 "certified point has max C_i " + format_double(*r.max_ci));
    }
    return r;
}

}  // namespace mos
