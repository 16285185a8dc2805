#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mos/pencil.hpp"
#include "mos/spectral.hpp"

namespace mos {

/// Decomposition failure or a spectrum with no finite eigenvalue.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raw output of the dense complex QZ decomposition: lambda_k = alpha_k / beta_k.
struct GeneralizedEigen {
    Eigen::VectorXcd alpha;
    Eigen::VectorXcd beta;
    Eigen::MatrixXcd vectors;  // right eigenvectors by column; empty when not requested
};

/// Dense complex QZ decomposition of the pencil (A, B) (LAPACK zggev).
GeneralizedEigen generalized_eigen(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, bool want_vectors = true);

/// Finite eigenvalues alpha/beta of the pencil (A, B); infinite ones are dropped.
std::vector<std::complex<double>> finite_generalized_eigenvalues(const Eigen::MatrixXcd& a,
                                                                 const Eigen::MatrixXcd& b);

struct Mode {
    std::complex<double> c;  // wave speed C = C_r + i C_i
    GridFunction phi;
    GridFunction omega;
    double residual = 0;     // ||(A x - C B x)_interior|| / (||A||_F ||x||)
    double bc_error = 0;     // largest boundary-row violation relative to ||x||_inf
    bool converged = false;  // set by filter() after the refinement solve
};

/// Total order on modes: descending C_i, then ascending C_r.
bool mode_order(const Mode& lhs, const Mode& rhs);

struct EigenSolution {
    std::vector<Mode> modes;
    std::shared_ptr<const EigenProblem> problem;

    /// Largest C_i among the modes; nullopt when empty.
    std::optional<double> max_ci() const;
};

/// How the dense pencil is decomposed.
enum class SolverMethod {
    /// Standard eigenproblem of (A - sigma B)^{-1} B by complex Schur; C = sigma + 1/mu.
    /// Accurate for the slow modes even when the fourth-derivative block makes ||A|| huge.
    shift_invert,
    /// Complex QZ on (A, B) directly.
    qz,
};

/// Full spectrum of the pencil. Each finite eigenpair is normalized so that
/// ||phi'||^2 + alpha^2 ||phi||^2 + ||omega||^2 = 1, with the largest entry of
/// the stacked vector made real and positive. Eigenvectors with |C| <= polish_limit
/// receive one inverse-iteration step before packaging (pass 0 to skip it).
EigenSolution solve(std::shared_ptr<const EigenProblem> problem, SolverMethod method = SolverMethod::shift_invert,
                    double polish_limit = 1e4);

/// Eigenvalues only (no vectors, no packaging), finite ones sorted by mode_order.
std::vector<std::complex<double>> solve_eigenvalues(const EigenProblem& problem,
                                                     SolverMethod method = SolverMethod::shift_invert);

/// Finite eigenvalues of an arbitrary square pencil, sorted by mode_order.
/// Bypasses assembly; used to test the decomposition on known pencils.
std::vector<std::complex<double>> pencil_eigenvalues(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                                     SolverMethod method = SolverMethod::shift_invert);

/// Test hook: adds `delta` to the eigenvalue of one mode, leaving its
/// eigenfunctions untouched, so that downstream identity checks must fail.
void perturb_eigenvalue(EigenSolution& solution, std::size_t index, std::complex<double> delta);

struct FilterCutoffs {
    double modulus_cutoff = 1e4;
    double residual_cutoff = 1e-6;
    double bc_tolerance = 1e-8;
    double refine_delta = 1e-8;  // converged iff |C_hi - C| < refine_delta (1 + |C|)
    int refine_extra = 40;       // companion solve uses grid order n + refine_extra
    bool refine = true;
};

/// Drops non-finite, over-modulus, high-residual and boundary-violating modes,
/// then flags the survivors converged when a companion solve on a finer grid
/// reproduces them.
EigenSolution filter(const EigenSolution& solution, const FilterCutoffs& cutoffs = {});

/// Same pencil reassembled with grid order `n_hi`.
EigenProblem reassemble(const EigenProblem& problem, int n_hi);

/// True iff the pencil on grid order n_hi has an eigenvalue within
/// refine_delta (1 + |C|) of mode.c.
bool refine_check(const EigenProblem& problem, const Mode& mode, int n_hi, double refine_delta = 1e-8);

/// Solve and filter in one call; a convenience for scans.
EigenSolution solve_filtered(const EigenProblem& problem, const FilterCutoffs& cutoffs = {},
                             double polish_limit = 1e4);

}  // namespace mos
