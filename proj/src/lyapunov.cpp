#include "gsmor/lyapunov.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

namespace gsmor {

namespace {

bool nearly_symmetric(const Eigen::MatrixXd& M) {
    const double scale = M.norm();
    if (scale == 0.0) return true;
    return (M - M.transpose()).norm() <= 1e-10 * scale;
}

/// Solve A1 Y + Y B1 = R for Y (t x s, t,s <= 2) via the Kronecker
/// system (I_s (x) A1 + B1^T (x) I_t) vec(Y) = vec(R).
Eigen::MatrixXd solve_small(const Eigen::MatrixXd& A1,
                            const Eigen::MatrixXd& B1,
                            const Eigen::MatrixXd& R) {
    const Eigen::Index t = A1.rows();
    const Eigen::Index s = B1.rows();
    const Eigen::Index m = t * s;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index j = 0; j < s; ++j)
        for (Eigen::Index i = 0; i < t; ++i)
            for (Eigen::Index jp = 0; jp < s; ++jp)
                for (Eigen::Index ip = 0; ip < t; ++ip) {
                    double v = 0.0;
                    if (j == jp) v += A1(i, ip);
                    if (i == ip) v += B1(jp, j);  // (B1^T (x) I)
                    K(j * t + i, jp * t + ip) = v;
                }
    Eigen::VectorXd rv(m);
    for (Eigen::Index j = 0; j < s; ++j)
        for (Eigen::Index i = 0; i < t; ++i) rv(j * t + i) = R(i, j);
    Eigen::VectorXd yv = K.partialPivLu().solve(rv);
    Eigen::MatrixXd Y(t, s);
    for (Eigen::Index j = 0; j < s; ++j)
        for (Eigen::Index i = 0; i < t; ++i) Y(i, j) = yv(j * t + i);
    return Y;
}

}  // namespace

SchurContext::SchurContext(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols() || A.rows() == 0)
        throw ShapeError("Schur context requires a square nonempty matrix");
    if (!A.allFinite())
        throw DomainError("Schur context requires finite entries");
    Eigen::RealSchur<Eigen::MatrixXd> schur(A);
    if (schur.info() != Eigen::Success)
        throw ConditioningError("real Schur iteration did not converge");
    T_ = schur.matrixT();
    Q_ = schur.matrixU();
    const Eigen::Index n = T_.rows();
    for (Eigen::Index k = 0; k < n;) {
        starts_.push_back(k);
        k += (k + 1 < n && T_(k + 1, k) != 0.0) ? 2 : 1;
    }
    starts_.push_back(n);  // sentinel
}

double SchurContext::max_real_part() const {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b + 1 < starts_.size(); ++b) {
        const Eigen::Index k = starts_[b];
        const Eigen::Index s = starts_[b + 1] - k;
        const double re =
            s == 1 ? T_(k, k) : 0.5 * (T_(k, k) + T_(k + 1, k + 1));
        worst = std::max(worst, re);
    }
    return worst;
}

void SchurContext::require_stable() const {
    const double re = max_real_part();
    if (re >= 0.0)
        throw StabilityError(
            "Lyapunov solve requires a Hurwitz coefficient matrix "
            "(largest real part " +
            std::to_string(re) + ")");
}

Eigen::MatrixXd SchurContext::solve_transformed(const Eigen::MatrixXd& Mt,
                                                bool transposed) const {
    const Eigen::Index n = T_.rows();
    const std::size_t nb = starts_.size() - 1;
    Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, n);

    if (!transposed) {
        // T Y + Y T^T = -Mt, block columns last to first.
        for (std::size_t kb = nb; kb-- > 0;) {
            const Eigen::Index kK = starts_[kb];
            const Eigen::Index s = starts_[kb + 1] - kK;
            const Eigen::Index after = kK + s;
            Eigen::MatrixXd R = -Mt.middleCols(kK, s);
            if (after < n)
                R.noalias() -= Y.rightCols(n - after) *
                               T_.block(kK, after, s, n - after).transpose();
            for (std::size_t ib = nb; ib-- > 0;) {
                const Eigen::Index kI = starts_[ib];
                const Eigen::Index t = starts_[ib + 1] - kI;
                const Eigen::MatrixXd Yik =
                    solve_small(T_.block(kI, kI, t, t),
                                T_.block(kK, kK, s, s).transpose(),
                                R.middleRows(kI, t));
                Y.block(kI, kK, t, s) = Yik;
                if (kI > 0)
                    R.topRows(kI).noalias() -= T_.block(0, kI, kI, t) * Yik;
            }
        }
    } else {
        // T^T Y + Y T = -Mt, block columns first to last.
        for (std::size_t kb = 0; kb < nb; ++kb) {
            const Eigen::Index kK = starts_[kb];
            const Eigen::Index s = starts_[kb + 1] - kK;
            Eigen::MatrixXd R = -Mt.middleCols(kK, s);
            if (kK > 0)
                R.noalias() -= Y.leftCols(kK) * T_.block(0, kK, kK, s);
            for (std::size_t ib = 0; ib < nb; ++ib) {
                const Eigen::Index kI = starts_[ib];
                const Eigen::Index t = starts_[ib + 1] - kI;
                const Eigen::Index below = kI + t;
                const Eigen::MatrixXd Yik =
                    solve_small(T_.block(kI, kI, t, t).transpose(),
                                T_.block(kK, kK, s, s),
                                R.middleRows(kI, t));
                Y.block(kI, kK, t, s) = Yik;
                if (below < n)
                    R.bottomRows(n - below).noalias() -=
                        T_.block(kI, below, t, n - below).transpose() * Yik;
            }
        }
    }
    return Y;
}

Eigen::MatrixXd SchurContext::solve(const Eigen::MatrixXd& M,
                                    bool transposed) const {
    if (M.rows() != n() || M.cols() != n())
        throw ShapeError("Lyapunov right-hand side dimension mismatch");
    if (!M.allFinite())
        throw DomainError("Lyapunov right-hand side must be finite");
    if (!nearly_symmetric(M))
        throw DomainError("Lyapunov right-hand side must be symmetric");
    require_stable();
    const Eigen::MatrixXd Mt = Q_.transpose() * M * Q_;
    const Eigen::MatrixXd Y = solve_transformed(Mt, transposed);
    Eigen::MatrixXd X = Q_ * Y * Q_.transpose();
    return 0.5 * (X + X.transpose());
}

Eigen::MatrixXd SchurContext::solve_factored(const Eigen::MatrixXd& F,
                                             bool transposed) const {
    if (F.rows() != n())
        throw ShapeError("Lyapunov factor row dimension mismatch");
    if (!F.allFinite())
        throw DomainError("Lyapunov factor must be finite");
    require_stable();
    const Eigen::MatrixXd G = Q_.transpose() * F;
    const Eigen::MatrixXd Mt = G * G.transpose();
    const Eigen::MatrixXd Y = solve_transformed(Mt, transposed);
    Eigen::MatrixXd X = Q_ * Y * Q_.transpose();
    return 0.5 * (X + X.transpose());
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& M) {
    SchurContext ctx(A);
    Eigen::MatrixXd X = ctx.solve(M, false);
    const double res = lyapunov_residual(A, X, M, false);
    if (res > 1e-8)
        std::cerr << "warning: Lyapunov solution relative residual " << res
                  << " exceeds 1e-8\n";
    return X;
}

double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& X,
                         const Eigen::MatrixXd& M, bool transposed) {
    Eigen::MatrixXd R;
    if (!transposed)
        R = A * X + X * A.transpose() + M;
    else
        R = A.transpose() * X + X * A + M;
    const double denom = M.norm();
    return denom == 0.0 ? R.norm() : R.norm() / denom;
}

}  // namespace gsmor
