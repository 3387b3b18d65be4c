#pragma once

#include <Eigen/Dense>
#include <utility>

#include "gsmor/errors.hpp"
#include "gsmor/lti.hpp"
#include "gsmor/lyapunov.hpp"

namespace gsmor {

/// Controllability and observability Gramians of a stable realization,
/// together with low-rank symmetric factors G_C = U U^T and G_O = L L^T.
struct GramianPair {
    Eigen::MatrixXd G_C;
    Eigen::MatrixXd G_O;
    Eigen::MatrixXd U;  // n x r_C
    Eigen::MatrixXd L;  // n x r_O
    Eigen::Index r_C = 0;
    Eigen::Index r_O = 0;
    double rank_tol = 0.0;    // relative eigenvalue cutoff used
    double residual_c = 0.0;  // Lyapunov residual of G_C, relative
    double residual_o = 0.0;  // Lyapunov residual of G_O, relative
};

/// Solve the two Lyapunov equations A G_C + G_C A^T = -B B^T and
/// G_O A + A^T G_O = -C^T C sharing one Schur form of A.
/// rank_tol < 0 selects the default n * machine-epsilon relative cutoff
/// for the factor ranks. Throws StabilityError when A is not Hurwitz.
GramianPair gramians(const LtiRealization& r, double rank_tol = -1.0);

/// Same, reusing an already computed Schur form of A.
GramianPair gramians(const LtiRealization& r, const SchurContext& ctx,
                     double rank_tol = -1.0);

/// Symmetric PSD factor G = U U^T with columns sorted by decreasing
/// eigenvalue; eigenvalues <= rank_tol * lambda_max are dropped. Falls
/// back to a dense Cholesky factor when G is numerically positive
/// definite.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& G, double rank_tol,
                           Eigen::Index& rank_out);

/// Input/output energies of a state y: first the minimal input energy
/// steering 0 -> y (infinite on unreachable states, reported by throwing
/// UnreachableStateError), second the output energy released from y with
/// zero input.
std::pair<double, double> energy_functions(const GramianPair& gp,
                                           const Eigen::VectorXd& y,
                                           double subspace_tol = 1e-8);

}  // namespace gsmor
