#include "gsmor/lti.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

namespace gsmor {

void LtiRealization::validate() const {
    if (A.rows() != A.cols()) throw ShapeError("realization: A must be square");
    if (B.rows() != A.rows())
        throw ShapeError("realization: B row count must match A");
    if (C.cols() != A.rows())
        throw ShapeError("realization: C column count must match A");
    if (!Eigen::MatrixXd(A).allFinite() || !B.allFinite() || !C.allFinite())
        throw DomainError("realization: non-finite entries");
}

LtiRealization make_realization(const Eigen::MatrixXd& A,
                                const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& C) {
    LtiRealization r{A.sparseView(), B, C};
    r.validate();
    return r;
}

LtiRealization make_realization(const Eigen::SparseMatrix<double>& A,
                                const Eigen::MatrixXd& B,
                                const Eigen::MatrixXd& C) {
    LtiRealization r{A, B, C};
    r.validate();
    return r;
}

LtiRealization transform_realization(const LtiRealization& r,
                                     const Eigen::MatrixXd& T) {
    if (T.rows() != T.cols() || T.rows() != r.n())
        throw ShapeError("transform_realization: T must be n x n");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(T);
    const double eps = std::numeric_limits<double>::epsilon();
    // rcond() is unreliable once a pivot is exactly zero, so inspect the
    // pivots as well.
    const Eigen::VectorXd piv = lu.matrixLU().diagonal().cwiseAbs();
    const double pmax = piv.maxCoeff();
    const double rc = lu.rcond();
    if (!(pmax > 0.0) ||
        piv.minCoeff() <= static_cast<double>(T.rows()) * eps * pmax ||
        !std::isfinite(rc) || rc < 100.0 * eps)
        throw ConditioningError("transform_realization: T numerically singular");
    const Eigen::MatrixXd Ti = lu.inverse();
    if (!Ti.allFinite())
        throw ConditioningError("transform_realization: T numerically singular");
    return make_realization(Eigen::MatrixXd(T * r.dense_A() * Ti),
                            Eigen::MatrixXd(T * r.B),
                            Eigen::MatrixXd(r.C * Ti));
}

Phase Schedule::phase(double t) const {
    for (const Interval& iv : charging)
        if (t >= iv.a && t < iv.b) return Phase::Charging;
    for (const Interval& iv : discharging)
        if (t >= iv.a && t < iv.b) return Phase::Discharging;
    // The horizon endpoint inherits the phase of the last interval it
    // closes, so t = b of a final charging block still charges.
    if (t == horizon) {
        for (const Interval& iv : charging)
            if (t == iv.b) return Phase::Charging;
        for (const Interval& iv : discharging)
            if (t == iv.b) return Phase::Discharging;
    }
    return Phase::Waiting;
}

namespace {

std::vector<Interval> normalize_intervals(std::vector<Interval> v,
                                          double horizon, const char* name) {
    std::sort(v.begin(), v.end(),
              [](const Interval& x, const Interval& y) { return x.a < y.a; });
    for (const Interval& iv : v) {
        if (!(iv.a < iv.b))
            throw DomainError(std::string("schedule: empty ") + name +
                              " interval");
        if (iv.a < 0.0 || iv.b > horizon)
            throw DomainError(std::string("schedule: ") + name +
                              " interval outside [0, T]");
    }
    for (size_t k = 1; k < v.size(); ++k)
        if (v[k].a < v[k - 1].b)
            throw DomainError(std::string("schedule: overlapping ") + name +
                              " intervals");
    return v;
}

}  // namespace

Schedule make_schedule(double horizon, std::vector<Interval> charging,
                       std::vector<Interval> discharging, double Q_C,
                       double Q_D, double Q_G, double Q_0, double v0) {
    if (!(horizon > 0.0)) throw DomainError("schedule: horizon must be positive");
    if (!std::isfinite(Q_C) || !std::isfinite(Q_D) || !std::isfinite(Q_G) ||
        !std::isfinite(Q_0))
        throw DomainError("schedule: temperatures must be finite");
    if (v0 < 0.0) throw DomainError("schedule: v0 must be nonnegative");

    Schedule s;
    s.horizon = horizon;
    s.charging = normalize_intervals(std::move(charging), horizon, "charging");
    s.discharging =
        normalize_intervals(std::move(discharging), horizon, "discharging");
    s.Q_C = Q_C;
    s.Q_D = Q_D;
    s.Q_G = Q_G;
    s.Q_0 = Q_0;
    s.v0 = v0;

    // Merge the pumping intervals and take the complement.
    std::vector<Interval> busy = s.charging;
    busy.insert(busy.end(), s.discharging.begin(), s.discharging.end());
    std::sort(busy.begin(), busy.end(),
              [](const Interval& x, const Interval& y) { return x.a < y.a; });
    for (size_t k = 1; k < busy.size(); ++k)
        if (busy[k].a < busy[k - 1].b)
            throw DomainError("schedule: charging and discharging overlap");
    double t = 0.0;
    for (const Interval& iv : busy) {
        if (iv.a > t) s.waiting.push_back({t, iv.a});
        t = iv.b;
    }
    if (t < horizon) s.waiting.push_back({t, horizon});
    return s;
}

Schedule shift_temperature(const Schedule& sched) {
    Schedule s = sched;
    s.Q_C -= sched.Q_0;
    s.Q_D -= sched.Q_0;
    s.Q_G -= sched.Q_0;
    s.Q_0 = 0.0;
    return s;
}

Eigen::Vector2d input_signal(const Schedule& sched, double t, double Qf_bar) {
    if (t < 0.0 || t > sched.horizon * (1.0 + 1e-12))
        throw DomainError("input_signal: time outside the schedule horizon");
    if (!std::isfinite(Qf_bar))
        throw DomainError("input_signal: Qf_bar must be finite");
    switch (sched.phase(std::min(t, sched.horizon))) {
        case Phase::Charging: return {sched.Q_C, sched.Q_G};
        case Phase::Discharging: return {sched.Q_D, sched.Q_G};
        case Phase::Waiting: default: return {Qf_bar, sched.Q_G};
    }
}

Trajectory simulate(const LtiRealization& r, const Schedule& sched,
                    const Eigen::VectorXd& y0, double tau,
                    const Eigen::RowVectorXd& Cf_row,
                    const SimulateOptions& opts) {
    r.validate();
    if (r.m() != 2)
        throw ShapeError("simulate: schedule-driven input needs B with 2 columns");
    if (y0.size() != r.n()) throw ShapeError("simulate: y0 size mismatch");
    if (!(tau > 0.0)) throw StepError("simulate: tau must be positive");
    const double steps = sched.horizon / tau;
    const auto K = static_cast<Eigen::Index>(std::llround(steps));
    if (K < 1 || std::abs(steps - static_cast<double>(K)) > 1e-9 * steps)
        throw StepError("simulate: tau must divide the horizon");
    const bool feedback = sched.has_waiting();
    if (feedback && Cf_row.size() != r.n())
        throw ConfigError(
            "simulate: schedule has waiting periods but no average-fluid row");

    const Eigen::Index n = r.n();
    const bool trap = opts.scheme == TimeScheme::Trapezoid;
    Eigen::SparseMatrix<double> I(n, n);
    I.setIdentity();
    const Eigen::SparseMatrix<double> lhs = trap
        ? Eigen::SparseMatrix<double>(I - (tau / 2.0) * r.A)
        : Eigen::SparseMatrix<double>(I - tau * r.A);
    const Eigen::SparseMatrix<double> rhs_mat =
        trap ? Eigen::SparseMatrix<double>(I + (tau / 2.0) * r.A)
             : Eigen::SparseMatrix<double>();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(lhs);
    if (lu.info() != Eigen::Success)
        throw StepError("simulate: failed to factor I - tau*A");

    Trajectory traj;
    traj.tau = tau;
    traj.outputs.resize(K + 1, r.n_out());
    traj.inputs.resize(K + 1, 2);
    if (opts.keep_states) traj.states.emplace(K + 1, n);

    Eigen::VectorXd y = y0;
    auto signal_at = [&](double t) {
        const double qf = feedback ? Cf_row.dot(y) : 0.0;
        return input_signal(sched, t, qf);
    };
    for (Eigen::Index k = 0; k <= K; ++k) {
        traj.outputs.row(k) = (r.C * y).transpose();
        if (opts.keep_states) traj.states->row(k) = y.transpose();
        const Eigen::Vector2d g = signal_at(traj.time(k));
        traj.inputs.row(k) = g.transpose();
        if (k == K) break;
        Eigen::VectorXd rhs;
        if (trap) {
            // Feedback lags one step: both endpoint signals use Y_k.
            const Eigen::Vector2d g1 = signal_at(traj.time(k + 1));
            rhs = rhs_mat * y + (tau / 2.0) * (r.B * (g + g1));
        } else {
            rhs = y + tau * (r.B * g);
        }
        y = lu.solve(rhs);
        if (!y.allFinite())
            throw Error("simulate: non-finite state encountered");
    }
    return traj;
}

Eigen::VectorXd running_l2(const Eigen::MatrixXd& samples, double tau) {
    Eigen::VectorXd out(samples.rows());
    double acc = 0.0;
    for (Eigen::Index k = 0; k < samples.rows(); ++k) {
        out[k] = std::sqrt(acc);
        acc += tau * samples.row(k).squaredNorm();
    }
    return out;
}

}  // namespace gsmor
