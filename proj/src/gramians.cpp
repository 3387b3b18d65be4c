#include "gsmor/gramians.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <iostream>
#include <limits>

#include "gsmor/lyapunov.hpp"

namespace gsmor {

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& G, double rank_tol,
                           Eigen::Index& rank_out) {
    const Eigen::Index n = G.rows();
    if (G.cols() != n) throw ShapeError("factor target must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    if (es.info() != Eigen::Success)
        throw ConditioningError("eigendecomposition failed");
    const Eigen::VectorXd lam = es.eigenvalues();  // ascending
    const double lmax = lam(n - 1);
    if (!(lmax > 0.0)) {
        rank_out = 0;
        return Eigen::MatrixXd::Zero(n, 0);
    }
    const double cutoff = rank_tol * lmax;
    if (lam(0) > cutoff) {
        Eigen::LLT<Eigen::MatrixXd> llt(G);
        if (llt.info() == Eigen::Success) {
            rank_out = n;
            return llt.matrixL();
        }
    }
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (lam(i) > cutoff) ++r;
    Eigen::MatrixXd U(n, r);
    for (Eigen::Index k = 0; k < r; ++k) {
        const Eigen::Index i = n - 1 - k;  // descending order
        U.col(k) = es.eigenvectors().col(i) * std::sqrt(lam(i));
    }
    rank_out = r;
    return U;
}

namespace {

double factored_residual(const Eigen::SparseMatrix<double>& A,
                         const Eigen::MatrixXd& X, const Eigen::MatrixXd& F,
                         bool transposed) {
    Eigen::MatrixXd R;
    if (!transposed) {
        R = A * X;
        R += R.transpose().eval();
    } else {
        R = A.transpose() * X;
        R += R.transpose().eval();
    }
    R.noalias() += F * F.transpose();
    const Eigen::MatrixXd S = F.transpose() * F;
    const double denom = S.norm();  // ||F F^T||_F = ||F^T F||_F
    return denom == 0.0 ? R.norm() : R.norm() / denom;
}

}  // namespace

GramianPair gramians(const LtiRealization& r, double rank_tol) {
    r.validate();
    SchurContext ctx(r.dense_A());
    return gramians(r, ctx, rank_tol);
}

GramianPair gramians(const LtiRealization& r, const SchurContext& ctx,
                     double rank_tol) {
    r.validate();
    if (ctx.n() != r.n())
        throw ShapeError("Schur context dimension mismatch");
    const Eigen::Index n = r.n();
    GramianPair gp;
    gp.rank_tol = rank_tol < 0.0
                      ? static_cast<double>(n) *
                            std::numeric_limits<double>::epsilon()
                      : rank_tol;

    gp.G_C = ctx.solve_factored(r.B, false);
    gp.G_O = ctx.solve_factored(r.C.transpose(), true);

    gp.residual_c = factored_residual(r.A, gp.G_C, r.B, false);
    gp.residual_o = factored_residual(r.A, gp.G_O, r.C.transpose(), true);
    if (gp.residual_c > 1e-8 || gp.residual_o > 1e-8)
        std::cerr << "warning: Gramian residuals " << gp.residual_c << ", "
                  << gp.residual_o << " exceed 1e-8\n";

    gp.U = psd_factor(gp.G_C, gp.rank_tol, gp.r_C);
    gp.L = psd_factor(gp.G_O, gp.rank_tol, gp.r_O);
    return gp;
}

std::pair<double, double> energy_functions(const GramianPair& gp,
                                           const Eigen::VectorXd& y,
                                           double subspace_tol) {
    if (y.size() != gp.G_O.rows())
        throw ShapeError("state dimension mismatch in energy evaluation");
    if (!y.allFinite())
        throw DomainError("energy evaluation requires a finite state");
    const double e_out = y.dot(gp.G_O * y);
    const double ynorm = y.norm();
    if (ynorm == 0.0) return {0.0, e_out};
    if (gp.r_C == 0)
        throw UnreachableStateError(
            "state lies outside the reachable subspace");
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gp.U);
    const Eigen::VectorXd z = cod.solve(y);
    const double defect = (gp.U * z - y).norm();
    if (defect > subspace_tol * ynorm)
        throw UnreachableStateError(
            "state lies outside the reachable subspace (projection defect " +
            std::to_string(defect / ynorm) + ")");
    return {z.squaredNorm(), e_out};
}

}  // namespace gsmor
