#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mos/baseflow.hpp"
#include "mos/params.hpp"
#include "mos/spectral.hpp"

namespace mos {

/// Discrete generalized eigenproblem A x = C B x for the coupled
/// stream-function / microrotation disturbance equations.
///
/// x stacks the phi samples (indices 0..N) and then the omega samples
/// (indices N+1..2N+1). With L2 = D^2 - alpha^2:
///
///   phi rows   A: i alpha (U L2 - U'') - nu L2^2   | -kphi L2
///              B: i alpha L2                        | 0
///   omega rows A: kom L2 - i alpha W'               | i alpha U - gamma L2 + d
///              B: 0                                 | i alpha
///
/// where nu, kphi, kom, gamma, d are the PencilCoefficients. Rows 0, 1, N-1, N
/// of the phi block hold phi(0) = phi'(0) = phi'(1) = phi(1) = 0 and rows 0, N
/// of the omega block hold omega(0) = omega(1) = 0; their B rows are zero.
struct EigenProblem {
    double alpha = 0;
    Eigen::MatrixXcd a_matrix;
    Eigen::MatrixXcd b_matrix;
    PencilCoefficients coeffs;
    std::optional<MicropolarParams> params;
    BaseFlow flow;
    std::shared_ptr<const SpectralOperator> op;
    std::vector<Eigen::Index> bc_rows;

    Eigen::Index block_size() const { return op->size(); }
    Eigen::Index dimension() const { return 2 * block_size(); }
    bool is_bc_row(Eigen::Index row) const;
    /// Rows not in bc_rows, ascending.
    std::vector<Eigen::Index> interior_rows() const;
};

/// Assemble for physical parameters.
EigenProblem assemble(double alpha, const MicropolarParams& params, const BaseFlow& flow,
                      std::shared_ptr<const SpectralOperator> op);

/// Assemble from raw block coefficients (any of them may be zero).
EigenProblem assemble(double alpha, const PencilCoefficients& coeffs, const BaseFlow& flow,
                      std::shared_ptr<const SpectralOperator> op);

/// Length scale in which a classical (alpha, Re) pair is quoted.
enum class ClassicalScaling {
    unit_width,  // lengths scaled by the full channel width, as in the micropolar problem
    half_width,  // lengths scaled by the channel half-width (the usual plane Poiseuille convention)
};

/// Classical Orr-Sommerfeld pencil built through classical_limit().
///
/// With half_width scaling the pair is mapped to the unit-width domain as
/// alpha -> 2 alpha, Re -> 2 Re; the wave speed C is unchanged.
EigenProblem classical_pencil(double alpha, double reynolds, const BaseFlow& flow,
                              std::shared_ptr<const SpectralOperator> op,
                              ClassicalScaling scaling = ClassicalScaling::half_width);

/// Writes A and B row-major, one row per line, real/imag interleaved, comma separated.
void dump_matrices_csv(const EigenProblem& problem, const std::string& path_prefix);

}  // namespace mos
