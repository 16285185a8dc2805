#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mos {

/// Highest polynomial degree accepted for a base-flow profile.
inline constexpr int kMaxProfileDegree = 16;

/// Real polynomial on [0,1], coefficients in ascending-degree order.
class Polynomial {
public:
    Polynomial() : coeffs_(Eigen::VectorXd::Zero(1)) {}
    explicit Polynomial(Eigen::VectorXd coeffs);
    Polynomial(std::initializer_list<double> coeffs);

    /// Horner evaluation for real or complex scalars.
    template <typename T>
    T operator()(const T& y) const {
        T acc(coeffs_(coeffs_.size() - 1));
        for (Eigen::Index k = coeffs_.size() - 2; k >= 0; --k) acc = acc * y + coeffs_(k);
        return acc;
    }

    Eigen::ArrayXd operator()(const Eigen::ArrayXd& y) const;

    Polynomial derivative() const;
    Polynomial scaled(double factor) const;
    Polynomial reflected() const;  // p(1 - y)

    /// Degree after trimming trailing zero coefficients (zero polynomial has degree 0).
    int degree() const;
    bool is_zero() const { return (coeffs_.array() == 0.0).all(); }
    const Eigen::VectorXd& coeffs() const { return coeffs_; }

private:
    Eigen::VectorXd coeffs_;
};

/// Real roots of p lying in [0,1] (companion-matrix eigenvalues, Newton polished).
std::vector<double> real_roots_in_unit_interval(const Polynomial& p);

/// Exact (min, max) of p over [0,1] from critical points and endpoints.
std::pair<double, double> polynomial_range(const Polynomial& p);

struct FlowExtrema {
    double u_min = 0, u_max = 0;
    double upp_min = 0, upp_max = 0;
    double wp_min = 0, wp_max = 0;
    double q1 = 0;  // max |U'|
    double q2 = 0;  // max |W'|
};

/// Parallel base flow (U(y), 0, 0) with microrotation (0, 0, W(y)) on y in [0,1].
///
/// Any (U, W) pair is accepted. Whether the pair is a steady solution of the
/// micropolar equations is the caller's responsibility.
class BaseFlow {
public:
    BaseFlow(Polynomial u, Polynomial w, std::string name = "custom");

    const Polynomial& u() const { return u_; }
    const Polynomial& w() const { return w_; }
    const Polynomial& du() const { return du_; }
    const Polynomial& d2u() const { return d2u_; }
    const Polynomial& dw() const { return dw_; }
    const std::string& name() const { return name_; }

    /// Both profiles multiplied by `factor`.
    BaseFlow scaled(double factor) const;
    /// The flow seen after the reflection y -> 1 - y (U(1-y), -W(1-y)).
    BaseFlow reflected() const;

private:
    Polynomial u_, w_;
    Polynomial du_, d2u_, dw_;
    std::string name_;
};

/// Built-in profiles: "couette" (U = y) and "poiseuille" (U = 4y(1-y)), both with W = 0.
BaseFlow make_profile(std::string_view name);
BaseFlow make_profile(std::vector<double> u_coeffs, std::vector<double> w_coeffs,
                      std::string name = "custom");

FlowExtrema extrema(const BaseFlow& flow);

}  // namespace mos
