#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gsmor/errors.hpp"

namespace gsmor {

/// Real Schur form A = Q T Q^T computed once and reused for the pair of
/// Lyapunov solves that share the same A.
class SchurContext {
  public:
    explicit SchurContext(const Eigen::MatrixXd& A);

    Eigen::Index n() const { return T_.rows(); }
    const Eigen::MatrixXd& T() const { return T_; }
    const Eigen::MatrixXd& Q() const { return Q_; }

    /// Largest real part over the spectrum, read off the diagonal blocks.
    double max_real_part() const;

    /// Solve A X + X A^T = -M (transposed=false) or A^T X + X A = -M
    /// (transposed=true) by quasi-triangular back-substitution. M must be
    /// symmetric; the result is symmetrized.
    Eigen::MatrixXd solve(const Eigen::MatrixXd& M, bool transposed) const;

    /// Same with M = F F^T given by its factor, avoiding the explicit
    /// product in the original coordinates.
    Eigen::MatrixXd solve_factored(const Eigen::MatrixXd& F,
                                   bool transposed) const;

  private:
    Eigen::MatrixXd solve_transformed(const Eigen::MatrixXd& Mt,
                                      bool transposed) const;
    void require_stable() const;

    Eigen::MatrixXd T_;
    Eigen::MatrixXd Q_;
    std::vector<Eigen::Index> starts_;  // diagonal block partition
};

/// Solve A X + X A^T = -M for stable A and symmetric M; X is
/// symmetrized. Emits an accuracy warning on stderr if the relative
/// residual exceeds 1e-8.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& M);

/// Relative residual ||A X + X A^T + M||_F / ||M||_F (transposed=false)
/// or ||A^T X + X A + M||_F / ||M||_F.
double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& X,
                         const Eigen::MatrixXd& M, bool transposed = false);

}  // namespace gsmor
