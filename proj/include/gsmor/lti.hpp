#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <optional>
#include <vector>

#include "gsmor/errors.hpp"

namespace gsmor {

/// State-space triple dY/dt = A Y + B g, Z = C Y. A is kept sparse; the
/// reduced systems produced by truncation are small enough that sparse
/// storage costs nothing.
struct LtiRealization {
    Eigen::SparseMatrix<double> A;
    Eigen::MatrixXd B;
    Eigen::MatrixXd C;

    Eigen::Index n() const { return A.rows(); }
    Eigen::Index m() const { return B.cols(); }
    Eigen::Index n_out() const { return C.rows(); }

    Eigen::MatrixXd dense_A() const { return Eigen::MatrixXd(A); }
    void validate() const;
};

LtiRealization make_realization(const Eigen::MatrixXd& A,
                                const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& C);
LtiRealization make_realization(const Eigen::SparseMatrix<double>& A,
                                const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& C);

/// Change of state coordinates (T A T^-1, T B, C T^-1). The input-output
/// map is unchanged.
LtiRealization transform_realization(const LtiRealization& r,
                                     const Eigen::MatrixXd& T);

/// Half-open interval [a, b) in seconds.
struct Interval {
    double a;
    double b;
};

enum class Phase { Charging, Discharging, Waiting };

/// Operating schedule over [0, horizon]: charging and discharging
/// intervals, waiting in between. Temperatures in degrees C.
struct Schedule {
    double horizon = 0.0;
    std::vector<Interval> charging;
    std::vector<Interval> discharging;
    std::vector<Interval> waiting;  // complement of the union
    double Q_C = 0.0;  // inlet temperature while charging
    double Q_D = 0.0;  // inlet temperature while discharging
    double Q_G = 0.0;  // ground temperature below the storage
    double Q_0 = 0.0;  // uniform initial temperature
    double v0 = 0.0;   // pump speed while pumping

    Phase phase(double t) const;
    bool has_waiting() const { return !waiting.empty(); }
};

/// Build a schedule; waiting intervals are derived as the complement of
/// the charging/discharging union in [0, horizon]. Intervals must be
/// disjoint and inside the horizon.
Schedule make_schedule(double horizon, std::vector<Interval> charging,
                       std::vector<Interval> discharging, double Q_C,
                       double Q_D, double Q_G, double Q_0, double v0);

/// Shift the temperature scale so the initial state is zero: subtracts
/// Q_0 from Q_C, Q_D, Q_G and zeroes Q_0. Outputs of the shifted system
/// plus Q_0 equal outputs of the original one.
Schedule shift_temperature(const Schedule& sched);

/// Input vector g(t) = (inlet temperature, ground temperature) of the
/// analogous system; during waiting the inlet temperature is the current
/// average fluid temperature Qf_bar.
Eigen::Vector2d input_signal(const Schedule& sched, double t, double Qf_bar);

enum class TimeScheme { ImplicitEuler, Trapezoid };

struct SimulateOptions {
    TimeScheme scheme = TimeScheme::ImplicitEuler;
    bool keep_states = false;
};

/// Time grid t_k = k*tau with recorded outputs and inputs; states kept
/// only on request.
struct Trajectory {
    double tau = 0.0;
    Eigen::MatrixXd outputs;  // (K+1) x n_o
    Eigen::MatrixXd inputs;   // (K+1) x m; row K repeats the final signal
    std::optional<Eigen::MatrixXd> states;

    Eigen::Index steps() const { return outputs.rows() - 1; }
    double time(Eigen::Index k) const { return k * tau; }
};

/// Integrate the realization over the schedule from state y0.
/// Implicit Euler: (I - tau A) Y_{k+1} = Y_k + tau B g_k with
/// g_k = input_signal(sched, t_k, Cf_row . Y_k); the factorization of
/// (I - tau A) is computed once. Cf_row holds the average-fluid-
/// temperature weights and may be empty when the schedule never waits.
Trajectory simulate(const LtiRealization& r, const Schedule& sched,
                    const Eigen::VectorXd& y0, double tau,
                    const Eigen::RowVectorXd& Cf_row,
                    const SimulateOptions& opts = {});

/// Running L2 norm of a sampled signal: out[k] = sqrt(sum_{j<k}
/// tau*|rows_j|^2), the left-endpoint rectangle rule on the tau-grid.
Eigen::VectorXd running_l2(const Eigen::MatrixXd& samples, double tau);

}  // namespace gsmor
