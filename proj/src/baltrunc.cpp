#include "gsmor/baltrunc.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <iostream>
#include <limits>

namespace gsmor {

HankelSvd hankel_svd(const GramianPair& gp) {
    HankelSvd h;
    if (gp.r_C == 0 || gp.r_O == 0) return h;
    const Eigen::MatrixXd P = gp.U.transpose() * gp.L;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(P, Eigen::ComputeThinU |
                                              Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv.size() == 0 || !(sv(0) > 0.0)) return h;
    const double cutoff = static_cast<double>(std::max(P.rows(), P.cols())) *
                          std::numeric_limits<double>::epsilon() * sv(0);
    Eigen::Index n0 = 0;
    while (n0 < sv.size() && sv(n0) > cutoff) ++n0;
    h.n0 = n0;
    h.sigma = sv.head(n0);
    h.W = svd.matrixU().leftCols(n0);
    h.V = svd.matrixV().leftCols(n0);
    for (Eigen::Index k = 0; k < n0; ++k) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < h.W.rows(); ++i) {
            const double a = std::abs(h.W(i, k));
            if (a > best) {
                best = a;
                imax = i;
            }
        }
        if (h.W(imax, k) < 0.0) {
            h.W.col(k) = -h.W.col(k);
            h.V.col(k) = -h.V.col(k);
        }
    }
    return h;
}

Eigen::VectorXd hankel_values(const GramianPair& gp) {
    return hankel_svd(gp).sigma;
}

BalancedReduction balance_truncate(const LtiRealization& r,
                                   const GramianPair& gp,
                                   const HankelSvd& svd, Eigen::Index l) {
    if (l < 1)
        throw OrderError("reduced order must be at least 1");
    if (l > svd.n0)
        throw OrderError("reduced order " + std::to_string(l) +
                         " exceeds the numerical minimal order " +
                         std::to_string(svd.n0));
    BalancedReduction br;
    br.sigma = svd.sigma;
    br.l = l;
    br.n0 = svd.n0;
    if (l < svd.n0) {
        const double gap = svd.sigma(l - 1) - svd.sigma(l);
        if (gap < 1e-10 * svd.sigma(l - 1)) {
            br.near_tie = true;
            std::cerr << "warning: truncation order " << l
                      << " splits a near-tied singular value pair\n";
        }
    }
    const Eigen::VectorXd d =
        svd.sigma.head(l).cwiseSqrt().cwiseInverse();
    // T_plus = D^{-1/2} V_l^T L^T, T_minus = U W_l D^{-1/2}.
    br.T_plus = (gp.L * (svd.V.leftCols(l) * d.asDiagonal())).transpose();
    br.T_minus = gp.U * (svd.W.leftCols(l) * d.asDiagonal());
    br.proj_defect =
        (br.T_plus * br.T_minus - Eigen::MatrixXd::Identity(l, l))
            .cwiseAbs()
            .maxCoeff();

    const Eigen::MatrixXd AT = r.A * br.T_minus;
    br.reduced = make_realization(Eigen::MatrixXd(br.T_plus * AT),
                                  br.T_plus * r.B, r.C * br.T_minus);
    return br;
}

BalancedReduction balance_truncate(const LtiRealization& r,
                                   const GramianPair& gp, Eigen::Index l) {
    return balance_truncate(r, gp, hankel_svd(gp), l);
}

double sigma_tail(const Eigen::VectorXd& sigma, Eigen::Index l) {
    if (l < 0 || l > sigma.size())
        throw OrderError("tail index out of range");
    double acc = 0.0;
    for (Eigen::Index i = sigma.size(); i-- > l;) acc += sigma(i);
    return acc;
}

double selection_criterion(const Eigen::VectorXd& sigma, Eigen::Index l) {
    if (sigma.size() == 0)
        throw OrderError("empty singular value spectrum");
    if (l < 1 || l > sigma.size())
        throw OrderError("selection order out of range");
    const double total = sigma_tail(sigma, 0);
    if (total == 0.0)
        throw OrderError("singular value mass is zero");
    return 1.0 - sigma_tail(sigma, l) / total;
}

Eigen::Index minimal_order(const Eigen::VectorXd& sigma, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("threshold must lie in (0, 1]");
    if (sigma.size() == 0)
        throw OrderError("empty singular value spectrum");
    for (Eigen::Index l = 1; l <= sigma.size(); ++l)
        if (selection_criterion(sigma, l) >= alpha) return l;
    return sigma.size();
}

Eigen::VectorXd error_bound(const Eigen::VectorXd& sigma, Eigen::Index l,
                            const Eigen::VectorXd& g_l2) {
    if (l < 1 || l > sigma.size())
        throw OrderError("bound order out of range");
    return 2.0 * sigma_tail(sigma, l) * g_l2;
}

}  // namespace gsmor
