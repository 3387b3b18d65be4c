#pragma once

#include <Eigen/Dense>

#include "gsmor/errors.hpp"
#include "gsmor/gramians.hpp"
#include "gsmor/lti.hpp"

namespace gsmor {

/// SVD of the Hankel product U^T L with a deterministic sign convention:
/// the largest-magnitude entry of each left singular vector is positive.
/// Only singular values above max(rows, cols) * eps * sigma_1 are kept.
struct HankelSvd {
    Eigen::VectorXd sigma;  // n0 values, strictly positive, descending
    Eigen::MatrixXd W;      // r_C x n0 left singular vectors
    Eigen::MatrixXd V;      // r_O x n0 right singular vectors
    Eigen::Index n0 = 0;    // numerical order of the minimal realization
};

HankelSvd hankel_svd(const GramianPair& gp);

/// Shorthand when only the values are needed.
Eigen::VectorXd hankel_values(const GramianPair& gp);

/// Square-root balanced truncation to order l. T_plus T_minus = I_l and
/// the reduced realization is (T_plus A T_minus, T_plus B, C T_minus).
struct BalancedReduction {
    Eigen::VectorXd sigma;    // full retained spectrum (length n0)
    Eigen::MatrixXd T_plus;   // l x n
    Eigen::MatrixXd T_minus;  // n x l
    LtiRealization reduced;
    Eigen::Index l = 0;
    Eigen::Index n0 = 0;
    double proj_defect = 0.0;  // max |T_plus T_minus - I|
    bool near_tie = false;     // sigma_l nearly equals sigma_{l+1}
};

BalancedReduction balance_truncate(const LtiRealization& r,
                                   const GramianPair& gp,
                                   const HankelSvd& svd, Eigen::Index l);
BalancedReduction balance_truncate(const LtiRealization& r,
                                   const GramianPair& gp, Eigen::Index l);

/// Sum sigma_{l+1} + ... + sigma_{n0}, accumulated from the smallest
/// value up to limit cancellation.
double sigma_tail(const Eigen::VectorXd& sigma, Eigen::Index l);

/// Fraction of the total singular value mass retained by order l.
double selection_criterion(const Eigen::VectorXd& sigma, Eigen::Index l);

/// Smallest order whose retained fraction reaches alpha in (0, 1].
Eigen::Index minimal_order(const Eigen::VectorXd& sigma, double alpha);

/// Running output error bound 2 * sigma_tail(l) * ||g||_{L2(0,t)} for a
/// vector of running input norms.
Eigen::VectorXd error_bound(const Eigen::VectorXd& sigma, Eigen::Index l,
                            const Eigen::VectorXd& g_l2);

}  // namespace gsmor
