#include "mos/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace mos {

namespace {

/// Differentiation matrices of orders 1..order on x_j = -cos(j pi / n), built by
/// the recursion D_k = k Z o (C o diag(D_{k-1}) 1^T - D_{k-1}) with the diagonal
/// of every D_k reset to the negative row sum. This stays accurate where plain
/// matrix powers lose several digits.
std::vector<Eigen::MatrixXd> chebyshev_derivatives(int n, int order) {
    using std::numbers::pi;
    const Eigen::Index m = n + 1;
    // Barycentric weights (-1)^j delta_j; x_i - x_j in product-of-sines form.
    auto weight = [n](Eigen::Index j) {
        const double s = (j % 2 == 0) ? 1.0 : -1.0;
        return (j == 0 || j == n) ? 0.5 * s : s;
    };
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(m, m);
    Eigen::MatrixXd c = Eigen::MatrixXd::Ones(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            if (i == j) continue;
            const double diff = 2.0 * std::sin(static_cast<double>(i + j) * pi / (2.0 * n)) *
                                std::sin(static_cast<double>(i - j) * pi / (2.0 * n));
            z(i, j) = 1.0 / diff;
            c(i, j) = weight(j) / weight(i);
        }
    }
    std::vector<Eigen::MatrixXd> out;
    Eigen::MatrixXd d = Eigen::MatrixXd::Identity(m, m);
    for (int k = 1; k <= order; ++k) {
        const Eigen::VectorXd diag = d.diagonal();
        Eigen::MatrixXd next = c.array().colwise() * diag.array();
        next = k * z.cwiseProduct(next - d);
        // Negative-sum diagonal keeps constants in the null space to rounding.
        for (Eigen::Index i = 0; i < m; ++i) next(i, i) = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) next(i, i) = -next.row(i).sum();
        d = std::move(next);
        out.push_back(d);
    }
    return out;
}

}  // namespace

Eigen::MatrixXd chebyshev_differentiation(int n) { return chebyshev_derivatives(n, 1).front(); }

Eigen::VectorXd clenshaw_curtis_weights(int n) {
    using std::numbers::pi;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 1);
    const double nn = static_cast<double>(n);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n - 1);
    Eigen::VectorXd theta(n - 1);
    for (int i = 1; i < n; ++i) theta(i - 1) = pi * i / nn;
    if (n % 2 == 0) {
        w(0) = w(n) = 1.0 / (nn * nn - 1.0);
        for (int k = 1; k < n / 2; ++k) v.array() -= 2.0 * (2.0 * k * theta.array()).cos() / (4.0 * k * k - 1.0);
        v.array() -= (nn * theta.array()).cos() / (nn * nn - 1.0);
    } else {
        w(0) = w(n) = 1.0 / (nn * nn);
        for (int k = 1; k <= (n - 1) / 2; ++k)
            v.array() -= 2.0 * (2.0 * k * theta.array()).cos() / (4.0 * k * k - 1.0);
    }
    w.segment(1, n - 1) = 2.0 * v / nn;
    return w;
}

SpectralOperator::SpectralOperator(int n) : n_(n) {
    if (n < kMinGridOrder)
        throw std::invalid_argument("grid order must be at least " + std::to_string(kMinGridOrder));
    using std::numbers::pi;
    nodes_.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double s = std::sin(j * pi / (2.0 * n));
        nodes_(j) = s * s;
    }
    nodes_(0) = 0.0;
    nodes_(n) = 1.0;

    const std::vector<Eigen::MatrixXd> d = chebyshev_derivatives(n, 4);
    d1_ = 2.0 * d[0];
    d2_ = 4.0 * d[1];
    d3_ = 8.0 * d[2];
    d4_ = 16.0 * d[3];
    weights_ = 0.5 * clenshaw_curtis_weights(n);
}

Eigen::MatrixXd interpolation_matrix(const SpectralOperator& from, const Eigen::VectorXd& points) {
    const Eigen::VectorXd& y = from.nodes();
    const Eigen::Index m = y.size();
    Eigen::VectorXd w(m);
    for (Eigen::Index j = 0; j < m; ++j) w(j) = (j % 2 ? -1.0 : 1.0) * (j == 0 || j == m - 1 ? 0.5 : 1.0);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(points.size(), m);
    for (Eigen::Index i = 0; i < points.size(); ++i) {
        const double x = points(i);
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("interpolation point outside [0,1]");
        Eigen::Index hit = -1;
        for (Eigen::Index j = 0; j < m && hit < 0; ++j)
            if (x == y(j)) hit = j;
        if (hit >= 0) {
            p(i, hit) = 1.0;
            continue;
        }
        const Eigen::ArrayXd terms = w.array() / (x - y.array());
        p.row(i) = (terms / terms.sum()).matrix().transpose();
    }
    return p;
}

}  // namespace mos
