// Acceptance gate: one pass/fail line per criterion, exit code equals the
// number of failed criteria.
#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gsmor/assembly.hpp"
#include "gsmor/baltrunc.hpp"
#include "gsmor/gramians.hpp"
#include "gsmor/grid.hpp"
#include "gsmor/lti.hpp"
#include "gsmor/lyapunov.hpp"
#include "oracles.hpp"

using namespace gsmor;

namespace {

MaterialParams soil() { return {2000.0, 800.0, 1.59}; }
MaterialParams water() { return {998.0, 4182.0, 0.60}; }

StorageGeometry reference_geometry(int n_P) {
    StorageGeometry g;
    g.l_x = 10.0;
    g.l_y = 1.0;
    g.l_z = 1.0;
    g.d_P = 0.02;
    g.n_P = n_P;
    g.lambda_G = 10.0;
    return g;
}

constexpr double kV0 = 1e-2;
constexpr double kQ0 = 10.0, kQC = 40.0, kQD = 5.0, kQG = 15.0;
constexpr double kHorizon = 72.0 * 3600.0;

const std::vector<Characteristic> kAllOutputs{
    Characteristic::MediumAvg, Characteristic::FluidAvg,
    Characteristic::OutletAvg, Characteristic::BottomAvg};

// Reference charging/discharging split, no waiting.
Schedule reference_schedule() {
    return make_schedule(kHorizon, {{0.0, 36.0 * 3600.0}},
                         {{36.0 * 3600.0, kHorizon}}, kQC, kQD, kQG, kQ0,
                         kV0);
}

struct DeskSystem {
    GridSpec grid;
    DiscretizedSystem sys;
    LtiRealization r4;  // all four outputs
    std::unique_ptr<SchurContext> ctx;
    GramianPair gp4;
    HankelSvd hs4;
};

DeskSystem build_desk(double scale, int n_P) {
    DeskSystem d;
    d.sys = discretize(reference_geometry(n_P), soil(), water(), 0.1 * scale,
                       0.01 * scale, kV0, PumpMode::On, /*analogous=*/true,
                       kAllOutputs);
    d.grid = d.sys.grid;
    d.r4 = make_realization(d.sys.A, d.sys.B, d.sys.C);
    d.ctx = std::make_unique<SchurContext>(d.r4.dense_A());
    d.gp4 = gramians(d.r4, *d.ctx);
    d.hs4 = hankel_svd(d.gp4);
    return d;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Line {
    bool pass = false;
    std::string detail = "not evaluated";
};

}  // namespace

int main() {
    std::array<Line, 10> lines;
    const std::array<std::string, 10> names = {
        "desk-grid stability",
        "Gramian solve residuals",
        "Gramian integral oracle",
        "balanced Gramian diagonality",
        "projection identity",
        "output error bound",
        "full-order recovery",
        "Hankel value decay",
        "minimal order monotonicity",
        "physical equilibria"};

    std::vector<double> residuals;   // criterion 2, all Gramian solves
    std::vector<double> proj_defects;  // criterion 5, all reductions
    auto track = [&residuals](const GramianPair& gp) {
        residuals.push_back(gp.residual_c);
        residuals.push_back(gp.residual_o);
    };

    auto guard = [&lines](int idx, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            lines[idx].pass = false;
            lines[idx].detail = std::string("exception: ") + e.what();
        }
    };

    std::unique_ptr<DeskSystem> d5, d5b, d10;

    // --- 1: stability of the semi-discretized operator on desk grids ----
    guard(0, [&] {
        std::ostringstream os;
        bool ok = true;
        for (const auto& [scale, n_P] :
             std::vector<std::pair<double, int>>{{5, 1}, {5, 3}, {10, 1}}) {
            auto d = build_desk(scale, n_P);
            const double abscissa = d.ctx->max_real_part();
            ok = ok && abscissa < 0.0;
            os << "scale " << scale << " n_P=" << n_P << ": max Re "
               << fmt(abscissa) << "; ";
            track(d.gp4);
            if (scale == 5 && n_P == 1)
                d5 = std::make_unique<DeskSystem>(std::move(d));
            else if (scale == 5 && n_P == 3)
                d5b = std::make_unique<DeskSystem>(std::move(d));
            else
                d10 = std::make_unique<DeskSystem>(std::move(d));
        }
        // Three strips need 3 medium gaps plus 6 interface rows; the
        // coarsest vertical resolution cannot host that layout.
        bool raised = false;
        try {
            build_grid(reference_geometry(3), 1.0, 0.1);
        } catch (const AlignmentError&) {
            raised = true;
        }
        ok = ok && raised;
        os << (raised ? "scale 10 n_P=3 infeasible as expected (placement "
                        "rejected)"
                      : "scale 10 n_P=3 unexpectedly accepted");
        lines[0] = {ok, os.str()};
    });

    // --- 3: Gramians against the truncated-integral oracle --------------
    guard(2, [&] {
        std::mt19937 rng(20240817);
        double worst = 0.0;
        int count = 0;
        for (int trial = 0; trial < 50; ++trial) {
            const Eigen::Index n = 2 + trial % 7;  // 2..8
            const auto r = make_realization(
                testutil::random_stable(rng, n),
                testutil::random_matrix(rng, n, 2),
                testutil::random_matrix(rng, 2, n));
            const auto gp = gramians(r);
            track(gp);
            const Eigen::MatrixXd A = r.dense_A();
            const Eigen::MatrixXd Gc_ref =
                testutil::gramian_integral(A, r.B * r.B.transpose());
            const Eigen::MatrixXd Go_ref = testutil::gramian_integral(
                A.transpose(), r.C.transpose() * r.C);
            worst = std::max(worst, (gp.G_C - Gc_ref).norm() / Gc_ref.norm());
            worst = std::max(worst, (gp.G_O - Go_ref).norm() / Go_ref.norm());
            ++count;
        }
        std::ostringstream os;
        os << count << " random systems n<=8, worst relative deviation "
           << fmt(worst) << " (tol 1e-6)";
        lines[2] = {worst <= 1e-6, os.str()};
    });

    // --- 4: balancing diagonalizes both Gramians ------------------------
    guard(3, [&] {
        std::mt19937 rng(424242);
        double worst_off = 0.0, worst_diag = 0.0;
        int count = 0;
        for (Eigen::Index n = 3; n <= 10; ++n) {
            // Screen for numerically minimal samples.
            for (int attempt = 0; attempt < 50; ++attempt) {
                const auto r = make_realization(
                    testutil::random_stable(rng, n),
                    testutil::random_matrix(rng, n, 2),
                    testutil::random_matrix(rng, 2, n));
                const auto gp = gramians(r);
                const auto hs = hankel_svd(gp);
                if (hs.n0 != n || hs.sigma(n - 1) < 1e-8 * hs.sigma(0))
                    continue;
                track(gp);
                const auto red = balance_truncate(r, gp, hs, n);
                proj_defects.push_back(red.proj_defect);
                const auto gp_bal = gramians(red.reduced);
                track(gp_bal);
                const double s1 = hs.sigma(0);
                for (const Eigen::MatrixXd& G : {gp_bal.G_C, gp_bal.G_O}) {
                    const Eigen::MatrixXd off =
                        G - Eigen::MatrixXd(G.diagonal().asDiagonal());
                    worst_off = std::max(worst_off, off.norm() / s1);
                    for (Eigen::Index i = 0; i < n; ++i)
                        worst_diag = std::max(
                            worst_diag, std::abs(G(i, i) - hs.sigma(i)) /
                                            hs.sigma(i));
                }
                ++count;
                break;
            }
        }
        std::ostringstream os;
        os << count << " minimal systems n=3..10, off-diagonal mass "
           << fmt(worst_off) << "*sigma1, diagonal deviation "
           << fmt(worst_diag) << " rel (tol 1e-6 each)";
        lines[3] = {count == 8 && worst_off <= 1e-6 && worst_diag <= 1e-6,
                    os.str()};
    });

    // --- 6 & 7a: error bound on the pumping experiment ------------------
    Eigen::MatrixXd Z5;      // full-order single-output trajectory (shifted)
    Eigen::VectorXd g_l2_5;  // running input norm
    std::unique_ptr<LtiRealization> r5_1;
    std::unique_ptr<GramianPair> gp5_1;
    std::unique_ptr<HankelSvd> hs5_1;
    guard(5, [&] {
        if (!d5) throw Error("scale-5 system unavailable");
        r5_1 = std::make_unique<LtiRealization>(make_realization(
            d5->sys.A, d5->sys.B, Eigen::MatrixXd(d5->sys.C.row(0))));
        gp5_1 = std::make_unique<GramianPair>(gramians(*r5_1, *d5->ctx));
        track(*gp5_1);
        hs5_1 = std::make_unique<HankelSvd>(hankel_svd(*gp5_1));

        const Schedule sched = shift_temperature(reference_schedule());
        const double tau = 1.0;
        const auto traj = simulate(*r5_1, sched,
                                   Eigen::VectorXd::Zero(r5_1->n()), tau,
                                   Eigen::RowVectorXd());
        Z5 = traj.outputs;
        g_l2_5 = running_l2(traj.inputs, tau);
        const Eigen::VectorXd z_l2 = running_l2(Z5, tau);

        double min_margin = std::numeric_limits<double>::infinity();
        double min_margin_rt = min_margin;
        std::ostringstream os;
        for (const Eigen::Index l : {1, 2, 4}) {
            const auto red = balance_truncate(*r5_1, *gp5_1, *hs5_1, l);
            proj_defects.push_back(red.proj_defect);
            const Eigen::RowVectorXd Cf;
            const auto tr = simulate(red.reduced, sched,
                                     Eigen::VectorXd::Zero(l), tau, Cf);
            const Eigen::VectorXd e = running_l2(Z5 - tr.outputs, tau);
            const Eigen::VectorXd bound = error_bound(hs5_1->sigma, l, g_l2_5);
            const Eigen::VectorXd zr_l2 = running_l2(tr.outputs, tau);
            for (Eigen::Index k = 0; k < e.size(); ++k) {
                min_margin = std::min(min_margin, bound(k) - e(k));
                min_margin_rt = std::min(
                    min_margin_rt, bound(k) - std::abs(z_l2(k) - zr_l2(k)));
            }
            os << "l=" << l << " final e=" << fmt(e(e.size() - 1))
               << " bound=" << fmt(bound(bound.size() - 1)) << "; ";
        }
        os << "worst margin " << fmt(min_margin) << ", reverse-triangle "
           << fmt(min_margin_rt);
        lines[5] = {min_margin >= -1e-12 && min_margin_rt >= -1e-12, os.str()};
    });

    guard(6, [&] {
        if (!d5 || !d10 || !hs5_1) throw Error("desk systems unavailable");
        std::ostringstream os;
        bool ok = true;

        // Single output at scale 5 (trajectory reused from the bound run).
        {
            const Schedule sched = shift_temperature(reference_schedule());
            const auto red =
                balance_truncate(*r5_1, *gp5_1, *hs5_1, hs5_1->n0);
            proj_defects.push_back(red.proj_defect);
            const auto tr =
                simulate(red.reduced, sched,
                         Eigen::VectorXd::Zero(hs5_1->n0), 1.0,
                         Eigen::RowVectorXd());
            const double rel = (Z5 - tr.outputs).cwiseAbs().maxCoeff() /
                               Z5.cwiseAbs().maxCoeff();
            ok = ok && rel <= 1e-6;
            os << "scale 5 (1 output, n0=" << hs5_1->n0 << "): rel "
               << fmt(rel) << "; ";
        }
        // All four outputs at scale 10.
        {
            const Schedule sched = shift_temperature(reference_schedule());
            const double tau = 60.0;
            const auto full = simulate(d10->r4, sched,
                                       Eigen::VectorXd::Zero(d10->r4.n()),
                                       tau, Eigen::RowVectorXd());
            const auto red = balance_truncate(d10->r4, d10->gp4, d10->hs4,
                                              d10->hs4.n0);
            proj_defects.push_back(red.proj_defect);
            const auto tr = simulate(red.reduced, sched,
                                     Eigen::VectorXd::Zero(d10->hs4.n0), tau,
                                     Eigen::RowVectorXd());
            const double rel =
                (full.outputs - tr.outputs).cwiseAbs().maxCoeff() /
                full.outputs.cwiseAbs().maxCoeff();
            ok = ok && rel <= 1e-6;
            os << "scale 10 (4 outputs, n0=" << d10->hs4.n0 << "): rel "
               << fmt(rel) << " (tol 1e-6)";
        }
        lines[6] = {ok, os.str()};
    });

    // --- 8: Hankel spectrum decay ---------------------------------------
    guard(7, [&] {
        if (!d5 || !d10) throw Error("desk systems unavailable");
        std::ostringstream os;
        bool ok = true;
        for (const auto* d : {d5.get(), d10.get()}) {
            const Eigen::VectorXd& s = d->hs4.sigma;
            bool strict = true;
            for (Eigen::Index i = 1; i < s.size(); ++i)
                strict = strict && s(i) < s(i - 1);
            ok = ok && strict;
            os << "n=" << d->r4.n() << ": n0=" << s.size()
               << (strict ? " strictly decreasing" : " NOT strictly decreasing");
            if (s.size() >= 50) {
                const double ratio = s(49) / s(0);
                ok = ok && ratio <= 1e-4;
                os << ", sigma50/sigma1=" << fmt(ratio);
            } else {
                // Values beyond n0 fell under the retention cutoff
                // max(r_C, r_O)*eps*sigma1, far below the required ratio.
                const double cutoff =
                    static_cast<double>(std::max(d->gp4.r_C, d->gp4.r_O)) *
                    std::numeric_limits<double>::epsilon();
                ok = ok && cutoff <= 1e-4;
                os << ", sigma50 below cutoff " << fmt(cutoff) << "*sigma1";
            }
            os << "; ";
        }
        os << "(tol 1e-4)";
        lines[7] = {ok, os.str()};
    });

    // --- 9: minimal orders grow with threshold and output set -----------
    guard(8, [&] {
        if (!d5 || !d5b) throw Error("scale-5 systems unavailable");
        const std::vector<double> alphas{0.5, 0.9, 0.95, 0.99, 0.999};
        std::ostringstream os;
        bool ok = true;
        for (const auto* d : {d5.get(), d5b.get()}) {
            std::vector<std::vector<Eigen::Index>> table;
            for (Eigen::Index p = 1; p <= 4; ++p) {
                Eigen::VectorXd sig;
                if (p == 4) {
                    sig = d->hs4.sigma;
                } else {
                    GramianPair sub;
                    sub.U = d->gp4.U;
                    sub.r_C = d->gp4.r_C;
                    const Eigen::MatrixXd Go = d->ctx->solve_factored(
                        d->sys.C.topRows(p).transpose(), true);
                    sub.L = psd_factor(Go, d->gp4.rank_tol, sub.r_O);
                    sig = hankel_values(sub);
                }
                std::vector<Eigen::Index> row;
                for (double a : alphas) row.push_back(minimal_order(sig, a));
                table.push_back(std::move(row));
            }
            for (std::size_t s = 0; s < table.size(); ++s)
                for (std::size_t k = 0; k < alphas.size(); ++k) {
                    if (k > 0) ok = ok && table[s][k] >= table[s][k - 1];
                    if (s > 0) ok = ok && table[s][k] >= table[s - 1][k];
                }
            os << "n_P=" << (d == d5.get() ? 1 : 3) << " orders(0.9): ";
            for (std::size_t s = 0; s < table.size(); ++s)
                os << table[s][1] << (s + 1 < table.size() ? "<=" : "");
            os << "; ";
        }
        os << (ok ? "monotone over 5 thresholds x 4 nested sets"
                  : "monotonicity violated")
           << " (full-resolution comparison optional, not run here)";
        lines[8] = {ok, os.str()};
    });

    // --- 10: equilibrium preservation and relaxation --------------------
    guard(9, [&] {
        if (!d10) throw Error("scale-10 system unavailable");
        std::ostringstream os;
        bool ok = true;
        {
            // All boundary temperatures at the initial level: the uniform
            // state is a fixed point of the stepping.
            const auto sched = make_schedule(
                2.0 * 3600.0, {{0.0, 1800.0}}, {{3600.0, 5400.0}}, kQ0, kQ0,
                kQ0, kQ0, kV0);
            const Eigen::RowVectorXd Cf = d10->sys.C.row(1);
            const auto traj = simulate(
                d10->r4, sched,
                Eigen::VectorXd::Constant(d10->r4.n(), kQ0), 30.0, Cf);
            const double dev =
                (traj.outputs.array() - kQ0).abs().maxCoeff();
            ok = ok && dev <= 1e-9;
            os << "uniform equilibrium held to " << fmt(dev)
               << " degC (tol 1e-9); ";
        }
        {
            // Pump off for a long horizon: everything settles at the
            // ground temperature.
            const auto geom = reference_geometry(1);
            const auto sys_off =
                discretize(geom, soil(), water(), 1.0, 0.1, 0.0,
                           PumpMode::Off, /*analogous=*/false, kAllOutputs);
            const auto r_off =
                make_realization(sys_off.A, sys_off.B, sys_off.C);
            const double rate = -verify_stability(sys_off.A);
            const Eigen::Index K = 2048;
            const double tau =
                std::log(1e3) / (rate * static_cast<double>(K));
            const auto sched = make_schedule(tau * static_cast<double>(K),
                                             {}, {}, kQC, kQD, kQG, kQ0, 0.0);
            const Eigen::RowVectorXd Cf = sys_off.C.row(1);
            const auto traj = simulate(
                r_off, sched, Eigen::VectorXd::Constant(r_off.n(), kQ0), tau,
                Cf);
            const double dev =
                (traj.outputs.row(K).array() - kQG).abs().maxCoeff();
            ok = ok && dev <= 0.1;
            os << "idle relaxation within " << fmt(dev)
               << " degC of the ground level (tol 0.1)";
        }
        lines[9] = {ok, os.str()};
    });

    // --- 2 & 5: invariants collected across every solve above -----------
    guard(1, [&] {
        if (residuals.empty()) throw Error("no Gramian solves recorded");
        const double worst =
            *std::max_element(residuals.begin(), residuals.end());
        std::ostringstream os;
        os << residuals.size() << " Lyapunov solves, worst relative residual "
           << fmt(worst) << " (tol 1e-8)";
        lines[1] = {worst <= 1e-8, os.str()};
    });
    guard(4, [&] {
        if (proj_defects.empty()) throw Error("no reductions recorded");
        const double worst =
            *std::max_element(proj_defects.begin(), proj_defects.end());
        std::ostringstream os;
        os << proj_defects.size()
           << " reductions, worst |T_plus T_minus - I| = " << fmt(worst)
           << " (tol 1e-8)";
        lines[4] = {worst <= 1e-8, os.str()};
    });

    int fails = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::cout << (lines[i].pass ? "[PASS] " : "[FAIL] ") << i + 1 << " "
                  << names[i] << ": " << lines[i].detail << "\n";
        if (!lines[i].pass) ++fails;
    }
    std::cout << (fails == 0 ? "all criteria passed"
                             : std::to_string(fails) + " criteria failed")
              << std::endl;
    return fails;
}
