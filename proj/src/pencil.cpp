#include "mos/pencil.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mos {

bool EigenProblem::is_bc_row(Eigen::Index row) const {
    return std::find(bc_rows.begin(), bc_rows.end(), row) != bc_rows.end();
}

std::vector<Eigen::Index> EigenProblem::interior_rows() const {
    std::vector<Eigen::Index> rows;
    rows.reserve(static_cast<std::size_t>(dimension()));
    for (Eigen::Index r = 0; r < dimension(); ++r)
        if (!is_bc_row(r)) rows.push_back(r);
    return rows;
}

EigenProblem assemble(double alpha, const MicropolarParams& params, const BaseFlow& flow,
                      std::shared_ptr<const SpectralOperator> op) {
    EigenProblem p = assemble(alpha, PencilCoefficients::from(params), flow, std::move(op));
    p.params = params;
    return p;
}

EigenProblem assemble(double alpha, const PencilCoefficients& c, const BaseFlow& flow,
                      std::shared_ptr<const SpectralOperator> op) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("wave number alpha must be positive");
    if (!op) throw std::invalid_argument("missing spectral operator");

    using cd = std::complex<double>;
    const cd ia(0.0, alpha);
    const Eigen::Index m = op->size();
    const int n = op->order();
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(m, m);
    const Eigen::MatrixXd l2 = op->d2() - alpha * alpha * eye;
    const Eigen::MatrixXd l2sq = op->d4() - 2.0 * alpha * alpha * op->d2() + std::pow(alpha, 4) * eye;

    // Coefficient profiles are evaluated from the polynomials, not differentiated numerically.
    const Eigen::ArrayXd y = op->nodes().array();
    const Eigen::VectorXd u = flow.u()(y).matrix();
    const Eigen::VectorXd upp = flow.d2u()(y).matrix();
    const Eigen::VectorXd wp = flow.dw()(y).matrix();

    EigenProblem p{.alpha = alpha,
                   .a_matrix = Eigen::MatrixXcd::Zero(2 * m, 2 * m),
                   .b_matrix = Eigen::MatrixXcd::Zero(2 * m, 2 * m),
                   .coeffs = c,
                   .params = std::nullopt,
                   .flow = flow,
                   .op = std::move(op),
                   .bc_rows = {}};
    auto phi_phi = p.a_matrix.topLeftCorner(m, m);
    auto phi_om = p.a_matrix.topRightCorner(m, m);
    auto om_phi = p.a_matrix.bottomLeftCorner(m, m);
    auto om_om = p.a_matrix.bottomRightCorner(m, m);

    phi_phi = ia * (u.asDiagonal() * l2 - Eigen::MatrixXd(upp.asDiagonal())).cast<cd>() -
              cd(c.viscous) * l2sq.cast<cd>();
    phi_om = (-c.phi_coupling * l2).cast<cd>();
    om_phi = (c.omega_coupling * l2).cast<cd>() - ia * Eigen::MatrixXd(wp.asDiagonal()).cast<cd>();
    om_om = ia * Eigen::MatrixXd(u.asDiagonal()).cast<cd>() +
            (-c.omega_diffusion * l2 + c.omega_damping * eye).cast<cd>();

    p.b_matrix.topLeftCorner(m, m) = ia * l2.cast<cd>();
    p.b_matrix.bottomRightCorner(m, m) = ia * eye.cast<cd>();

    // Boundary rows: phi(0), phi'(0), phi'(1), phi(1), omega(0), omega(1).
    const Eigen::Index om0 = m;
    const Eigen::Index omn = m + n;
    p.bc_rows = {0, 1, n - 1, n, om0, omn};
    for (Eigen::Index r : p.bc_rows) {
        p.a_matrix.row(r).setZero();
        p.b_matrix.row(r).setZero();
    }
    p.a_matrix(0, 0) = 1.0;
    p.a_matrix(n, n) = 1.0;
    p.a_matrix.row(1).head(m) = p.op->d1().row(0).cast<cd>();
    p.a_matrix.row(n - 1).head(m) = p.op->d1().row(n).cast<cd>();
    p.a_matrix(om0, om0) = 1.0;
    p.a_matrix(omn, omn) = 1.0;
    return p;
}

EigenProblem classical_pencil(double alpha, double reynolds, const BaseFlow& flow,
                              std::shared_ptr<const SpectralOperator> op, ClassicalScaling scaling) {
    const double factor = scaling == ClassicalScaling::half_width ? 2.0 : 1.0;
    return assemble(factor * alpha, classical_limit(factor * reynolds), flow, std::move(op));
}

void dump_matrices_csv(const EigenProblem& problem, const std::string& path_prefix) {
    auto write = [](const Eigen::MatrixXcd& mat, const std::string& path) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open " + path);
        char buf[64];
        for (Eigen::Index i = 0; i < mat.rows(); ++i) {
            for (Eigen::Index j = 0; j < mat.cols(); ++j) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g", mat(i, j).real(), mat(i, j).imag());
                out << (j ? "," : "") << buf;
            }
            out << '\n';
        }
    };
    write(problem.a_matrix, path_prefix + "_A.csv");
    write(problem.b_matrix, path_prefix + "_B.csv");
}

}  // namespace mos
