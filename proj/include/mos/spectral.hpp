#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace mos {

/// Samples of a complex function on the collocation nodes.
using GridFunction = Eigen::VectorXcd;

inline constexpr int kMinGridOrder = 16;

/// Chebyshev-Gauss-Lobatto collocation on [0,1].
///
/// Nodes y_j = (1 - cos(j pi / N)) / 2, j = 0..N, ascending with y_0 = 0 and
/// y_N = 1. Differentiation matrices carry the factor 2 per derivative from the
/// map [-1,1] -> [0,1]; d2 = d1 d1 and d4 = d2 d2. Quadrature weights are
/// Clenshaw-Curtis weights scaled to [0,1].
class SpectralOperator {
public:
    explicit SpectralOperator(int n);

    int order() const { return n_; }
    Eigen::Index size() const { return n_ + 1; }
    const Eigen::VectorXd& nodes() const { return nodes_; }
    const Eigen::MatrixXd& d1() const { return d1_; }
    const Eigen::MatrixXd& d2() const { return d2_; }
    const Eigen::MatrixXd& d3() const { return d3_; }
    const Eigen::MatrixXd& d4() const { return d4_; }
    const Eigen::VectorXd& weights() const { return weights_; }

    /// Integral over [0,1] of the interpolant of `f`.
    template <typename Derived>
    typename Derived::Scalar integrate(const Eigen::MatrixBase<Derived>& f) const {
        check_length(f.size());
        return weights_.cast<typename Derived::Scalar>().dot(f.derived());
    }

    void check_length(Eigen::Index len) const {
        if (len != size()) throw std::invalid_argument("grid function length does not match the operator");
    }

private:
    int n_;
    Eigen::VectorXd nodes_;
    Eigen::MatrixXd d1_, d2_, d3_, d4_;
    Eigen::VectorXd weights_;
};

/// <f, g> = integral_0^1 f conj(g) dy by Clenshaw-Curtis quadrature.
template <typename DerivedF, typename DerivedG>
std::complex<double> inner_product(const Eigen::MatrixBase<DerivedF>& f, const Eigen::MatrixBase<DerivedG>& g,
                                   const SpectralOperator& op) {
    op.check_length(f.size());
    op.check_length(g.size());
    const Eigen::VectorXd& w = op.weights();
    std::complex<double> acc = 0.0;
    for (Eigen::Index j = 0; j < w.size(); ++j)
        acc += w(j) * std::complex<double>(f(j)) * std::conj(std::complex<double>(g(j)));
    return acc;
}

/// ||f||^2 = <f, f>.
template <typename Derived>
double norm_sq(const Eigen::MatrixBase<Derived>& f, const SpectralOperator& op) {
    op.check_length(f.size());
    return op.weights().dot(f.derived().cwiseAbs2().template cast<double>());
}

/// Barycentric interpolation from the nodes of `from` to arbitrary points in [0,1]:
/// (P f)(x_i) is the value at points(i) of the interpolant of f.
Eigen::MatrixXd interpolation_matrix(const SpectralOperator& from, const Eigen::VectorXd& points);

/// Chebyshev differentiation matrix on x_j = -cos(j pi / N) (ascending, [-1,1]).
Eigen::MatrixXd chebyshev_differentiation(int n);

/// Clenshaw-Curtis weights on [-1,1] for the N+1 Chebyshev extreme points.
Eigen::VectorXd clenshaw_curtis_weights(int n);

}  // namespace mos
