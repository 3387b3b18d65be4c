#pragma once

#include <Eigen/Dense>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "gsmor/lti.hpp"

// Independent reference computations the solver tests compare against.
namespace testutil {

inline Eigen::MatrixXd random_matrix(std::mt19937& rng, Eigen::Index r,
                                     Eigen::Index c) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd M(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) M(i, j) = u(rng);
    return M;
}

/// Random dense matrix shifted to have spectral abscissa in
/// [-1.5, -0.5], so every test system has a moderate decay margin.
inline Eigen::MatrixXd random_stable(std::mt19937& rng, Eigen::Index n) {
    Eigen::MatrixXd A = random_matrix(rng, n, n);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    const double abscissa = A.eigenvalues().real().maxCoeff();
    A -= (abscissa + u(rng)) * Eigen::MatrixXd::Identity(n, n);
    return A;
}

/// Truncated integral of e^{At} M e^{A^T t} via composite Simpson with a
/// matrix-exponential recurrence; the upper limit is grown until the
/// integrand tail is below 1e-18 of its initial size.
inline Eigen::MatrixXd gramian_integral(const Eigen::MatrixXd& A,
                                        const Eigen::MatrixXd& M,
                                        int panels = 4096) {
    const Eigen::Index n = A.rows();
    double T = 1.0;
    while (T < 1e6) {
        const Eigen::MatrixXd E = (A * T).exp();
        if (E.norm() <= 1e-9) break;
        T *= 2.0;
    }
    const double h = T / panels;
    const Eigen::MatrixXd Eh = (A * h).exp();
    Eigen::MatrixXd Ek = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k <= panels; ++k) {
        const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        acc += w * Ek * M * Ek.transpose();
        Ek = (Ek * Eh).eval();
    }
    return acc * (h / 3.0);
}

/// Output energy of the unforced system from state y: integral of
/// |C e^{At} y|^2, same quadrature as above.
inline double output_energy_integral(const Eigen::MatrixXd& A,
                                     const Eigen::MatrixXd& C,
                                     const Eigen::VectorXd& y,
                                     int panels = 4096) {
    double T = 1.0;
    while (T < 1e6) {
        const Eigen::MatrixXd E = (A * T).exp();
        if (E.norm() <= 1e-9) break;
        T *= 2.0;
    }
    const double h = T / panels;
    const Eigen::MatrixXd Eh = (A * h).exp();
    Eigen::VectorXd yk = y;
    double acc = 0.0;
    for (int k = 0; k <= panels; ++k) {
        const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        acc += w * (C * yk).squaredNorm();
        yk = (Eh * yk).eval();
    }
    return acc * (h / 3.0);
}

/// Markov-parameter samples C A^k B, k = 0..kmax.
inline std::vector<Eigen::MatrixXd> impulse_samples(const Eigen::MatrixXd& A,
                                                    const Eigen::MatrixXd& B,
                                                    const Eigen::MatrixXd& C,
                                                    int kmax) {
    std::vector<Eigen::MatrixXd> out;
    Eigen::MatrixXd P = B;
    for (int k = 0; k <= kmax; ++k) {
        out.push_back(C * P);
        P = (A * P).eval();
    }
    return out;
}

inline std::vector<Eigen::MatrixXd> impulse_samples(
    const gsmor::LtiRealization& r, int kmax) {
    return impulse_samples(r.dense_A(), r.B, r.C, kmax);
}

}  // namespace testutil
