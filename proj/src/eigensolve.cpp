#include "mos/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <lapacke.h>

namespace mos {

namespace {

// std::complex<double> and the LAPACK complex type share layout.
lapack_complex_double* lp(std::complex<double>* z) { return reinterpret_cast<lapack_complex_double*>(z); }

}  // namespace

GeneralizedEigen generalized_eigen(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, bool want_vectors) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("pencil matrices must be square and of equal size");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Eigen::MatrixXcd aw = a;
    Eigen::MatrixXcd bw = b;
    GeneralizedEigen out;
    out.alpha.resize(n);
    out.beta.resize(n);
    if (want_vectors) out.vectors.resize(n, n);
    std::complex<double> dummy;
    const lapack_int info =
        LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, lp(aw.data()), n, lp(bw.data()), n,
                      lp(out.alpha.data()), lp(out.beta.data()), lp(&dummy), 1,
                      want_vectors ? lp(out.vectors.data()) : lp(&dummy), want_vectors ? n : 1);
    if (info != 0) {
        std::ostringstream msg;
        msg << "QZ decomposition failed (zggev info " << info << "); ||A||_F = " << a.norm()
            << ", ||B||_F = " << b.norm() << ", rcond(A) ~ "
            << 1.0 / (a.cwiseAbs().rowwise().sum().maxCoeff() *
                      a.fullPivLu().inverse().cwiseAbs().rowwise().sum().maxCoeff());
        throw SolverError(msg.str());
    }
    return out;
}

std::vector<std::complex<double>> finite_generalized_eigenvalues(const Eigen::MatrixXcd& a,
                                                                 const Eigen::MatrixXcd& b) {
    const GeneralizedEigen ge = generalized_eigen(a, b, false);
    std::vector<std::complex<double>> out;
    for (Eigen::Index k = 0; k < ge.alpha.size(); ++k) {
        if (ge.beta(k) == 0.0) continue;
        const std::complex<double> c = ge.alpha(k) / ge.beta(k);
        if (std::isfinite(c.real()) && std::isfinite(c.imag())) out.push_back(c);
    }
    return out;
}

bool mode_order(const Mode& lhs, const Mode& rhs) {
    if (lhs.c.imag() != rhs.c.imag()) return lhs.c.imag() > rhs.c.imag();
    return lhs.c.real() < rhs.c.real();
}

std::optional<double> EigenSolution::max_ci() const {
    if (modes.empty()) return std::nullopt;
    double best = -std::numeric_limits<double>::infinity();
    for (const Mode& m : modes) best = std::max(best, m.c.imag());
    return best;
}

namespace {

bool value_order(std::complex<double> lhs, std::complex<double> rhs) {
    if (lhs.imag() != rhs.imag()) return lhs.imag() > rhs.imag();
    return lhs.real() < rhs.real();
}

struct RawSpectrum {
    std::vector<std::complex<double>> values;
    std::vector<Eigen::Index> columns;  // column of `vectors` for each value
    Eigen::MatrixXcd vectors;
};

RawSpectrum shift_invert_spectrum(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, bool want_vectors) {
    // sigma = 0 unless A itself is (numerically) singular.
    const std::complex<double> shifts[] = {{0.0, 0.0}, {0.1, 0.1}, {-0.3, 0.7}};
    for (const std::complex<double> sigma : shifts) {
        const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a - sigma * b);
        const Eigen::MatrixXcd m = lu.solve(b);
        if (!m.allFinite() || !(lu.rcond() > 0.0)) continue;
        const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, want_vectors);
        if (es.info() != Eigen::Success) throw SolverError("complex Schur decomposition did not converge");
        const Eigen::VectorXcd& mu = es.eigenvalues();
        // B has zero boundary rows, so mu = 0 (C infinite) appears with multiplicity >= 6.
        const double zero_tol = 1e-13 * mu.cwiseAbs().maxCoeff();
        RawSpectrum out;
        for (Eigen::Index k = 0; k < mu.size(); ++k) {
            if (!(std::abs(mu(k)) > zero_tol)) continue;
            out.values.push_back(sigma + 1.0 / mu(k));
            out.columns.push_back(k);
        }
        if (want_vectors) out.vectors = es.eigenvectors();
        return out;
    }
    throw SolverError("shifted operator A - sigma B is singular for every trial shift; ||A||_F = " +
                      std::to_string(a.norm()) + ", ||B||_F = " + std::to_string(b.norm()));
}

RawSpectrum qz_spectrum(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, bool want_vectors) {
    GeneralizedEigen ge = generalized_eigen(a, b, want_vectors);
    RawSpectrum out;
    for (Eigen::Index k = 0; k < ge.alpha.size(); ++k) {
        if (ge.beta(k) == 0.0) continue;
        const std::complex<double> c = ge.alpha(k) / ge.beta(k);
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) continue;
        out.values.push_back(c);
        out.columns.push_back(k);
    }
    out.vectors = std::move(ge.vectors);
    return out;
}

RawSpectrum raw_spectrum(const EigenProblem& p, bool want_vectors, SolverMethod method) {
    return method == SolverMethod::qz ? qz_spectrum(p.a_matrix, p.b_matrix, want_vectors)
                                      : shift_invert_spectrum(p.a_matrix, p.b_matrix, want_vectors);
}

// One inverse-iteration step (A - C B) x_new = B x. The Schur vectors satisfy
// the boundary rows only to about 1e-10; the step restores them to rounding level.
Eigen::VectorXcd polish_vector(const EigenProblem& p, std::complex<double> c, const Eigen::VectorXcd& x) {
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(p.a_matrix - c * p.b_matrix);
    Eigen::VectorXcd y = lu.solve(p.b_matrix * x);
    if (!y.allFinite() || y.norm() == 0.0) return x;
    return y / y.norm();
}

}  // namespace

EigenSolution solve(std::shared_ptr<const EigenProblem> problem, SolverMethod method, double polish_limit) {
    if (!problem) throw std::invalid_argument("missing eigenproblem");
    const EigenProblem& p = *problem;
    const RawSpectrum spec = raw_spectrum(p, true, method);
    const SpectralOperator& op = *p.op;
    const Eigen::Index m = p.block_size();
    const double a_norm = p.a_matrix.norm();
    const std::vector<Eigen::Index> interior = p.interior_rows();

    EigenSolution sol;
    sol.problem = problem;
    for (std::size_t k = 0; k < spec.values.size(); ++k) {
        const std::complex<double> c = spec.values[k];
        Eigen::VectorXcd x = spec.vectors.col(spec.columns[k]);
        if (std::abs(c) <= polish_limit) x = polish_vector(p, c, x);
        Eigen::Index peak = 0;
        x.cwiseAbs().maxCoeff(&peak);
        x *= std::abs(x(peak)) / x(peak);

        const GridFunction phi = x.head(m);
        const GridFunction omega = x.tail(m);
        const double energy =
            norm_sq(op.d1() * phi, op) + p.alpha * p.alpha * norm_sq(phi, op) + norm_sq(omega, op);
        if (!(energy > 0.0)) continue;
        x /= std::sqrt(energy);

        const Eigen::VectorXcd r = p.a_matrix * x - c * (p.b_matrix * x);
        double interior_sq = 0.0;
        for (Eigen::Index row : interior) interior_sq += std::norm(r(row));
        double bc = 0.0;
        for (Eigen::Index row : p.bc_rows) bc = std::max(bc, std::abs(r(row)));

        Mode mode;
        mode.c = c;
        mode.phi = x.head(m);
        mode.omega = x.tail(m);
        mode.residual = std::sqrt(interior_sq) / (a_norm * x.norm());
        mode.bc_error = bc / x.cwiseAbs().maxCoeff();
        sol.modes.push_back(std::move(mode));
    }
    if (sol.modes.empty()) throw SolverError("pencil has no finite eigenvalues; check the assembly");
    std::stable_sort(sol.modes.begin(), sol.modes.end(), mode_order);
    return sol;
}

std::vector<std::complex<double>> solve_eigenvalues(const EigenProblem& problem, SolverMethod method) {
    std::vector<std::complex<double>> out = raw_spectrum(problem, false, method).values;
    if (out.empty()) throw SolverError("pencil has no finite eigenvalues; check the assembly");
    std::stable_sort(out.begin(), out.end(), value_order);
    return out;
}

std::vector<std::complex<double>> pencil_eigenvalues(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                                     SolverMethod method) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("pencil matrices must be square and of equal size");
    std::vector<std::complex<double>> out = method == SolverMethod::qz ? qz_spectrum(a, b, false).values
                                                                       : shift_invert_spectrum(a, b, false).values;
    std::stable_sort(out.begin(), out.end(), value_order);
    return out;
}

void perturb_eigenvalue(EigenSolution& solution, std::size_t index, std::complex<double> delta) {
    if (index >= solution.modes.size()) throw std::out_of_range("no mode to perturb at that index");
    solution.modes[index].c += delta;
}

EigenProblem reassemble(const EigenProblem& problem, int n_hi) {
    auto op = std::make_shared<const SpectralOperator>(n_hi);
    EigenProblem hi = assemble(problem.alpha, problem.coeffs, problem.flow, std::move(op));
    hi.params = problem.params;
    return hi;
}

namespace {

double nearest_distance(const std::vector<std::complex<double>>& values, std::complex<double> c) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : values) best = std::min(best, std::abs(v - c));
    return best;
}

}  // namespace

bool refine_check(const EigenProblem& problem, const Mode& mode, int n_hi, double refine_delta) {
    if (n_hi <= problem.op->order()) throw std::invalid_argument("refinement grid order must exceed the original");
    const auto values = solve_eigenvalues(reassemble(problem, n_hi));
    return nearest_distance(values, mode.c) < refine_delta * (1.0 + std::abs(mode.c));
}

EigenSolution filter(const EigenSolution& solution, const FilterCutoffs& cutoffs) {
    EigenSolution out;
    out.problem = solution.problem;
    for (const Mode& m : solution.modes) {
        if (!std::isfinite(m.c.real()) || !std::isfinite(m.c.imag())) continue;
        if (std::abs(m.c) > cutoffs.modulus_cutoff) continue;
        if (!(m.residual <= cutoffs.residual_cutoff)) continue;
        if (!(m.bc_error <= cutoffs.bc_tolerance)) continue;
        out.modes.push_back(m);
    }
    if (cutoffs.refine && solution.problem && !out.modes.empty()) {
        const int n_hi = solution.problem->op->order() + cutoffs.refine_extra;
        const auto values = solve_eigenvalues(reassemble(*solution.problem, n_hi));
        for (Mode& m : out.modes)
            m.converged = nearest_distance(values, m.c) < cutoffs.refine_delta * (1.0 + std::abs(m.c));
    }
    return out;
}

EigenSolution solve_filtered(const EigenProblem& problem, const FilterCutoffs& cutoffs, double polish_limit) {
    return filter(solve(std::make_shared<const EigenProblem>(problem), SolverMethod::shift_invert, polish_limit),
                  cutoffs);
}

}  // namespace mos
