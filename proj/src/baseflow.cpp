#include "mos/baseflow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mos {

namespace {

constexpr double kUnitIntervalTol = 1e-12;

Eigen::VectorXd trimmed(const Eigen::VectorXd& c) {
    Eigen::Index n = c.size();
    while (n > 1 && c(n - 1) == 0.0) --n;
    return c.head(n);
}

}  // namespace

Polynomial::Polynomial(Eigen::VectorXd coeffs) {
    if (coeffs.size() == 0) coeffs = Eigen::VectorXd::Zero(1);
    if (!coeffs.allFinite()) throw std::invalid_argument("polynomial coefficients must be finite");
    coeffs_ = trimmed(coeffs);
}

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : Polynomial(Eigen::Map<const Eigen::VectorXd>(coeffs.begin(), static_cast<Eigen::Index>(coeffs.size()))) {}

Eigen::ArrayXd Polynomial::operator()(const Eigen::ArrayXd& y) const {
    Eigen::ArrayXd acc = Eigen::ArrayXd::Constant(y.size(), coeffs_(coeffs_.size() - 1));
    for (Eigen::Index k = coeffs_.size() - 2; k >= 0; --k) acc = acc * y + coeffs_(k);
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial{};
    Eigen::VectorXd d(coeffs_.size() - 1);
    for (Eigen::Index k = 1; k < coeffs_.size(); ++k) d(k - 1) = static_cast<double>(k) * coeffs_(k);
    return Polynomial(d);
}

Polynomial Polynomial::scaled(double factor) const { return Polynomial(Eigen::VectorXd(coeffs_ * factor)); }

Polynomial Polynomial::reflected() const {
    // sum_k c_k (1 - y)^k, expanded with binomial coefficients.
    const Eigen::Index n = coeffs_.size();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double binom = 1.0;
        for (Eigen::Index j = 0; j <= k; ++j) {
            out(j) += coeffs_(k) * binom * ((j % 2) ? -1.0 : 1.0);
            binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
        }
    }
    return Polynomial(out);
}

int Polynomial::degree() const { return static_cast<int>(coeffs_.size()) - 1; }

std::vector<double> real_roots_in_unit_interval(const Polynomial& p) {
    std::vector<double> roots;
    const int deg = p.degree();
    if (deg < 1) return roots;
    const Eigen::VectorXd& c = p.coeffs();

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    companion.diagonal(-1).setOnes();
    companion.col(deg - 1) = -c.head(deg) / c(deg);
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    const Polynomial dp = p.derivative();

    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const std::complex<double> z = es.eigenvalues()(i);
        // Multiple roots come back as tight complex clusters, so the imaginary
        // acceptance is loose; extra candidates never change a range.
        if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z))) continue;
        double y = z.real();
        for (int it = 0; it < 8; ++it) {
            const double d = dp(y);
            if (d == 0.0) break;
            const double step = p(y) / d;
            if (!std::isfinite(step)) break;
            y -= step;
            if (std::abs(step) <= 1e-16 * (1.0 + std::abs(y))) break;
        }
        if (!std::isfinite(y)) y = z.real();
        if (y < -kUnitIntervalTol || y > 1.0 + kUnitIntervalTol) continue;
        roots.push_back(std::clamp(y, 0.0, 1.0));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::pair<double, double> polynomial_range(const Polynomial& p) {
    double lo = std::min(p(0.0), p(1.0));
    double hi = std::max(p(0.0), p(1.0));
    for (double y : real_roots_in_unit_interval(p.derivative())) {
        const double v = p(y);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

BaseFlow::BaseFlow(Polynomial u, Polynomial w, std::string name)
    : u_(std::move(u)), w_(std::move(w)), name_(std::move(name)) {
    if (u_.degree() > kMaxProfileDegree || w_.degree() > kMaxProfileDegree)
        throw std::invalid_argument("profile degree exceeds cap of " + std::to_string(kMaxProfileDegree));
    du_ = u_.derivative();
    d2u_ = du_.derivative();
    dw_ = w_.derivative();
}

BaseFlow BaseFlow::scaled(double factor) const { return BaseFlow(u_.scaled(factor), w_.scaled(factor), name_); }

BaseFlow BaseFlow::reflected() const {
    return BaseFlow(u_.reflected(), w_.reflected().scaled(-1.0), name_ + "-reflected");
}

BaseFlow make_profile(std::string_view name) {
    if (name == "couette") return BaseFlow(Polynomial{0.0, 1.0}, Polynomial{}, "couette");
    if (name == "poiseuille") return BaseFlow(Polynomial{0.0, 4.0, -4.0}, Polynomial{}, "poiseuille");
    throw std::invalid_argument("unknown profile name: " + std::string(name));
}

BaseFlow make_profile(std::vector<double> u_coeffs, std::vector<double> w_coeffs, std::string name) {
    auto to_poly = [](const std::vector<double>& v) {
        return Polynomial(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    return BaseFlow(to_poly(u_coeffs), to_poly(w_coeffs), std::move(name));
}

FlowExtrema extrema(const BaseFlow& flow) {
    FlowExtrema e;
    std::tie(e.u_min, e.u_max) = polynomial_range(flow.u());
    std::tie(e.upp_min, e.upp_max) = polynomial_range(flow.d2u());
    std::tie(e.wp_min, e.wp_max) = polynomial_range(flow.dw());
    const auto [up_min, up_max] = polynomial_range(flow.du());
    e.q1 = std::max(std::abs(up_min), std::abs(up_max));
    e.q2 = std::max(std::abs(e.wp_min), std::abs(e.wp_max));
    return e;
}

}  // namespace mos
