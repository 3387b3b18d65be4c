#include "gsmor/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "gsmor/baltrunc.hpp"
#include "gsmor/gramians.hpp"
#include "gsmor/grid.hpp"
#include "gsmor/lyapunov.hpp"

namespace fs = std::filesystem;

namespace gsmor {

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse number '" +
                          v + "'");
    }
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse integer '" +
                          v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "': cannot parse boolean '" + v +
                      "'");
}

std::vector<Interval> parse_intervals(const std::string& key,
                                      const std::string& v) {
    std::vector<Interval> out;
    for (const std::string& part : split_list(v)) {
        const auto dash = part.find('-');
        if (dash == std::string::npos)
            throw ConfigError("config key '" + key +
                              "': expected 'a-b' ranges, got '" + part + "'");
        out.push_back({parse_double(key, trim(part.substr(0, dash))),
                       parse_double(key, trim(part.substr(dash + 1)))});
    }
    return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key,
               const std::string& v) {
    if (key == "l_x") cfg.geom.l_x = parse_double(key, v);
    else if (key == "l_y") cfg.geom.l_y = parse_double(key, v);
    else if (key == "l_z") cfg.geom.l_z = parse_double(key, v);
    else if (key == "d_P") cfg.geom.d_P = parse_double(key, v);
    else if (key == "n_P") cfg.geom.n_P = static_cast<int>(parse_int(key, v));
    else if (key == "phx_rows") {
        cfg.geom.phx_centers.clear();
        for (const std::string& s : split_list(v))
            cfg.geom.phx_centers.push_back(parse_double(key, s));
    } else if (key == "lambda_G") cfg.geom.lambda_G = parse_double(key, v);
    else if (key == "rho_M") cfg.medium.rho = parse_double(key, v);
    else if (key == "c_p_M") cfg.medium.c_p = parse_double(key, v);
    else if (key == "kappa_M") cfg.medium.kappa = parse_double(key, v);
    else if (key == "rho_F") cfg.fluid.rho = parse_double(key, v);
    else if (key == "c_p_F") cfg.fluid.c_p = parse_double(key, v);
    else if (key == "kappa_F") cfg.fluid.kappa = parse_double(key, v);
    else if (key == "v_0") cfg.v0 = parse_double(key, v);
    else if (key == "Q_0") cfg.Q_0 = parse_double(key, v);
    else if (key == "Q_C_I") cfg.Q_C = parse_double(key, v);
    else if (key == "Q_D_I") cfg.Q_D = parse_double(key, v);
    else if (key == "Q_G") cfg.Q_G = parse_double(key, v);
    else if (key == "h_x") cfg.h_x = parse_double(key, v);
    else if (key == "h_y") cfg.h_y = parse_double(key, v);
    else if (key == "grid_scale") cfg.grid_scale = parse_double(key, v);
    else if (key == "tau") cfg.tau = parse_double(key, v);
    else if (key == "T") cfg.horizon_hours = parse_double(key, v);
    else if (key == "I_C") cfg.charging_hours = parse_intervals(key, v);
    else if (key == "I_D") cfg.discharging_hours = parse_intervals(key, v);
    else if (key == "outputs") {
        cfg.outputs.clear();
        for (const std::string& s : split_list(v))
            cfg.outputs.push_back(characteristic_from_string(s));
    } else if (key == "orders") {
        cfg.orders.clear();
        for (const std::string& s : split_list(v))
            cfg.orders.push_back(parse_int(key, s));
    } else if (key == "alpha") {
        cfg.alphas.clear();
        for (const std::string& s : split_list(v))
            cfg.alphas.push_back(parse_double(key, s));
    } else if (key == "scheme") {
        if (v == "euler") cfg.scheme = TimeScheme::ImplicitEuler;
        else if (v == "trapezoid") cfg.scheme = TimeScheme::Trapezoid;
        else
            throw ConfigError(
                "config key 'scheme': expected euler or trapezoid, got '" + v +
                "'");
    } else if (key == "out_dir") cfg.out_dir = v;
    else if (key == "full_grid") cfg.full_grid = parse_bool(key, v);
    else if (key == "csv_stride")
        cfg.csv_stride = static_cast<int>(parse_int(key, v));
    else
        throw ConfigError("unknown config key '" + key + "'");
}

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string alpha_label(double a) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", a);
    return buf;
}

void log_stage(const std::string& stage, const std::string& msg) {
    std::cout << "[" << stage << "] " << msg << std::endl;
}

std::vector<Interval> hours_to_seconds(const std::vector<Interval>& hours) {
    std::vector<Interval> out;
    out.reserve(hours.size());
    for (const Interval& iv : hours)
        out.push_back({iv.a * 3600.0, iv.b * 3600.0});
    return out;
}

/// Removes everything it created unless commit() was called, so a failed
/// run leaves no partial artifacts behind.
class ArtifactSink {
  public:
    explicit ArtifactSink(const fs::path& dir) : dir_(dir) {
        fs::create_directories(dir_);
    }
    ~ArtifactSink() {
        if (!armed_) return;
        for (const fs::path& p : created_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }
    ArtifactSink(const ArtifactSink&) = delete;
    ArtifactSink& operator=(const ArtifactSink&) = delete;

    std::ofstream open(const std::string& name) {
        const fs::path p = dir_ / name;
        created_.push_back(p);
        std::ofstream out(p);
        if (!out)
            throw Error("cannot open " + p.string() + " for writing");
        return out;
    }
    void commit() { armed_ = false; }
    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const fs::path& p : created_) out.push_back(p.string());
        return out;
    }

  private:
    fs::path dir_;
    std::vector<fs::path> created_;
    bool armed_ = true;
};

}  // namespace

void ExperimentConfig::validate() const {
    geom.validate();
    medium.validate();
    fluid.validate();
    if (!(v0 >= 0.0)) throw DomainError("config: v_0 must be nonnegative");
    if (!(h_x > 0.0) || !(h_y > 0.0))
        throw DomainError("config: grid steps must be positive");
    if (!(grid_scale > 0.0))
        throw DomainError("config: grid_scale must be positive");
    if (!(tau > 0.0)) throw StepError("config: tau must be positive");
    if (!(horizon_hours > 0.0))
        throw DomainError("config: horizon must be positive");
    for (double q : {Q_0, Q_C, Q_D, Q_G})
        if (!std::isfinite(q))
            throw DomainError("config: temperatures must be finite");
    if (outputs.empty())
        throw ConfigError("config: output characteristic list is empty");
    for (std::size_t i = 0; i < outputs.size(); ++i)
        for (std::size_t k = i + 1; k < outputs.size(); ++k)
            if (outputs[i] == outputs[k])
                throw ConfigError("config: duplicate output characteristic " +
                                  to_string(outputs[i]));
    if (orders.empty())
        throw ConfigError("config: reduced order list is empty");
    for (Eigen::Index l : orders)
        if (l < 1)
            throw ConfigError("config: reduced orders must be positive");
    if (alphas.empty())
        throw ConfigError("config: alpha threshold list is empty");
    for (double a : alphas)
        if (!(a > 0.0) || a > 1.0)
            throw DomainError("config: alpha thresholds must lie in (0, 1]");
    if (csv_stride < 1)
        throw ConfigError("config: csv_stride must be at least 1");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    ExperimentConfig cfg;
    std::map<std::string, std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": malformed section header");
            continue;  // sections organize the file; keys are global
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": empty key");
        if (!seen.emplace(key, value).second)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        apply_key(cfg, key, value);
    }
    return cfg;
}

Eigen::VectorXd l2_error(const Eigen::MatrixXd& Z,
                         const Eigen::MatrixXd& Z_tilde, double tau) {
    if (Z.rows() != Z_tilde.rows() || Z.cols() != Z_tilde.cols())
        throw ShapeError("trajectory shape mismatch in error evaluation");
    return running_l2(Z - Z_tilde, tau);
}

EnergyReport energy_rates(const Trajectory& traj, const ExperimentConfig& cfg,
                          const Schedule& sched, const GridSpec& grid,
                          const EnergyColumns& cols) {
    if (cols.Qo < 0 || cols.Qb < 0)
        throw ConfigError(
            "energy accounting requires the outlet and bottom averages");
    const Eigen::Index rows = traj.outputs.rows();
    const Eigen::Index n_o = traj.outputs.cols();
    for (Eigen::Index c : {cols.Qm, cols.Qf, cols.Qo, cols.Qb})
        if (c >= n_o) throw ShapeError("energy column index out of range");
    if (!(traj.tau > 0.0))
        throw StepError("trajectory step must be positive");

    EnergyReport rep;
    double strip_height = 0.0;
    for (const PhxStrip& s : grid.strips)
        strip_height += (s.j_top - s.j_bot) * grid.h_y;
    rep.area_outlet = strip_height;
    rep.area_bottom = cfg.geom.l_x;
    rep.vol_fluid = cfg.geom.l_x * strip_height;
    rep.vol_medium = cfg.geom.l_x * cfg.geom.l_y - rep.vol_fluid;

    rep.R_P.setZero(rows);
    rep.R_B.setZero(rows);
    rep.G_P.setZero(rows);
    rep.G_B.setZero(rows);
    const double heat_F = cfg.fluid.rho * cfg.fluid.c_p;
    for (Eigen::Index k = 0; k < rows; ++k) {
        const double t = std::min(traj.time(k), sched.horizon);
        const Phase ph = sched.phase(t);
        if (ph != Phase::Waiting) {
            const double QI = ph == Phase::Charging ? sched.Q_C : sched.Q_D;
            rep.R_P(k) = heat_F * sched.v0 * rep.area_outlet *
                         (QI - traj.outputs(k, cols.Qo));
        }
        rep.R_B(k) = cfg.geom.lambda_G * rep.area_bottom *
                     (sched.Q_G - traj.outputs(k, cols.Qb));
        if (k > 0) {
            rep.G_P(k) =
                rep.G_P(k - 1) + cfg.geom.l_z * traj.tau * rep.R_P(k - 1);
            rep.G_B(k) =
                rep.G_B(k - 1) + cfg.geom.l_z * traj.tau * rep.R_B(k - 1);
        }
    }
    if (cols.Qm >= 0)
        rep.G_M = cfg.medium.rho * cfg.medium.c_p * rep.vol_medium *
                  cfg.geom.l_z *
                  (traj.outputs.col(cols.Qm).array() -
                   traj.outputs(0, cols.Qm));
    if (cols.Qf >= 0)
        rep.G_F = heat_F * rep.vol_fluid * cfg.geom.l_z *
                  (traj.outputs.col(cols.Qf).array() -
                   traj.outputs(0, cols.Qf));
    return rep;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    std::string stage = "config";
    try {
        cfg.validate();
        {
            std::ostringstream os;
            os << "outputs=";
            for (std::size_t i = 0; i < cfg.outputs.size(); ++i)
                os << (i ? "," : "") << to_string(cfg.outputs[i]);
            os << " grid_scale=" << cfg.grid_scale << " tau=" << cfg.tau
               << " horizon=" << cfg.horizon_hours << "h scheme="
               << (cfg.scheme == TimeScheme::ImplicitEuler ? "euler"
                                                           : "trapezoid");
            log_stage(stage, os.str());
        }

        stage = "grid";
        const GridSpec grid =
            build_grid(cfg.geom, cfg.h_x_eff(), cfg.h_y_eff());
        const int n = grid.n();
        {
            std::ostringstream os;
            os << "N_x=" << grid.N_x << " N_y=" << grid.N_y
               << " q=" << grid.q() << " n=" << n;
            log_stage(stage, os.str());
        }
        if (n > 5000 && !cfg.full_grid)
            throw ConfigError(
                "state dimension n=" + std::to_string(n) +
                " exceeds the desk limit; set full_grid=true (--full-grid)");

        stage = "assembly";
        const Eigen::SparseMatrix<double> A =
            assemble_system(grid, cfg.medium, cfg.fluid, cfg.geom, cfg.v0);
        const Eigen::MatrixXd B = assemble_input(
            grid, cfg.medium, cfg.fluid, cfg.geom, cfg.v0, PumpMode::On, true);
        const Eigen::MatrixXd C_cfg =
            assemble_outputs(grid, cfg.medium, cfg.fluid, cfg.outputs);
        const std::vector<Characteristic> energy_chars{
            Characteristic::MediumAvg, Characteristic::FluidAvg,
            Characteristic::OutletAvg, Characteristic::BottomAvg};
        const Eigen::MatrixXd C_energy =
            assemble_outputs(grid, cfg.medium, cfg.fluid, energy_chars);
        const Eigen::RowVectorXd Cf_row = C_energy.row(1);
        log_stage(stage, "nnz(A)=" + std::to_string(A.nonZeros()));

        stage = "gramians";
        const LtiRealization r_cfg = make_realization(A, B, C_cfg);
        const SchurContext ctx(r_cfg.dense_A());
        const GramianPair gp = gramians(r_cfg, ctx);
        {
            std::ostringstream os;
            os << "residuals " << gp.residual_c << " / " << gp.residual_o
               << ", ranks r_C=" << gp.r_C << " r_O=" << gp.r_O;
            log_stage(stage, os.str());
        }

        stage = "hankel";
        const HankelSvd hs = hankel_svd(gp);
        if (hs.n0 == 0)
            throw OrderError("no Hankel singular values above tolerance");
        ExperimentResult res;
        res.n = n;
        res.n0 = hs.n0;
        res.sigma = hs.sigma;
        {
            std::ostringstream os;
            os << "n0=" << hs.n0 << " sigma1=" << hs.sigma(0)
               << " sigma_n0=" << hs.sigma(hs.n0 - 1);
            log_stage(stage, os.str());
        }
        for (std::size_t p = 1; p <= cfg.outputs.size(); ++p) {
            std::string name;
            for (std::size_t k = 0; k < p; ++k)
                name += (k ? "," : "") + to_string(cfg.outputs[k]);
            Eigen::VectorXd sig_p;
            if (p == cfg.outputs.size()) {
                sig_p = hs.sigma;
            } else {
                GramianPair sub;
                sub.U = gp.U;
                sub.r_C = gp.r_C;
                sub.rank_tol = gp.rank_tol;
                const Eigen::MatrixXd G_O_sub = ctx.solve_factored(
                    C_cfg.topRows(static_cast<Eigen::Index>(p)).transpose(),
                    true);
                sub.L = psd_factor(G_O_sub, gp.rank_tol, sub.r_O);
                sig_p = hankel_values(sub);
            }
            std::vector<Eigen::Index> row;
            for (double a : cfg.alphas)
                row.push_back(sig_p.size() > 0 ? minimal_order(sig_p, a)
                                               : Eigen::Index{0});
            res.set_names.push_back(name);
            res.orders_by_set.push_back(row);
        }

        stage = "simulate";
        const Schedule sched_abs = make_schedule(
            cfg.horizon_seconds(), hours_to_seconds(cfg.charging_hours),
            hours_to_seconds(cfg.discharging_hours), cfg.Q_C, cfg.Q_D,
            cfg.Q_G, cfg.Q_0, cfg.v0);
        const Schedule sched_sh = shift_temperature(sched_abs);
        const Eigen::Index k_out = C_cfg.rows();
        Eigen::MatrixXd C_sim(k_out + 4, n);
        C_sim.topRows(k_out) = C_cfg;
        C_sim.bottomRows(4) = C_energy;
        const LtiRealization r_sim = make_realization(A, B, C_sim);
        SimulateOptions opts;
        opts.scheme = cfg.scheme;
        const Trajectory traj = simulate(r_sim, sched_sh,
                                         Eigen::VectorXd::Zero(n), cfg.tau,
                                         Cf_row, opts);
        const Eigen::VectorXd g_l2 = running_l2(traj.inputs, cfg.tau);
        const Eigen::MatrixXd Z_full_sh = traj.outputs.leftCols(k_out);
        log_stage(stage,
                  "steps=" + std::to_string(traj.steps()) + " outputs=" +
                      std::to_string(k_out) + "+4");

        stage = "reduce";
        std::vector<Eigen::Index> ells;
        for (Eigen::Index l : cfg.orders) {
            const Eigen::Index le = std::min<Eigen::Index>(l, hs.n0);
            if (le != l)
                log_stage(stage, "order " + std::to_string(l) +
                                     " clamped to n0=" + std::to_string(le));
            if (std::find(ells.begin(), ells.end(), le) == ells.end())
                ells.push_back(le);
        }
        std::sort(ells.begin(), ells.end());
        struct Reduced {
            BalancedReduction br;
            Eigen::MatrixXd Z_sh;
        };
        std::vector<std::future<Reduced>> futs;
        futs.reserve(ells.size());
        for (const Eigen::Index l : ells)
            futs.push_back(std::async(std::launch::async, [&, l] {
                Reduced rd;
                rd.br = balance_truncate(r_cfg, gp, hs, l);
                const Eigen::RowVectorXd Cf_red = Cf_row * rd.br.T_minus;
                Trajectory tr = simulate(rd.br.reduced, sched_sh,
                                         Eigen::VectorXd::Zero(l), cfg.tau,
                                         Cf_red, opts);
                rd.Z_sh = std::move(tr.outputs);
                return rd;
            }));
        std::vector<Reduced> reds;
        reds.reserve(futs.size());
        for (auto& f : futs) reds.push_back(f.get());
        res.simulated_orders = ells;
        std::vector<Eigen::VectorXd> errs, bounds;
        for (std::size_t i = 0; i < reds.size(); ++i) {
            const Reduced& rd = reds[i];
            res.proj_defects.push_back(rd.br.proj_defect);
            errs.push_back(l2_error(Z_full_sh, rd.Z_sh, cfg.tau));
            bounds.push_back(error_bound(hs.sigma, ells[i], g_l2));
            res.max_errors.push_back(
                (Z_full_sh - rd.Z_sh).cwiseAbs().maxCoeff());
            std::ostringstream os;
            os << "l=" << ells[i] << " proj_defect=" << rd.br.proj_defect
               << " max|Z-Zt|=" << res.max_errors.back()
               << " final_e=" << errs.back()(errs.back().size() - 1)
               << " final_bound=" << bounds.back()(bounds.back().size() - 1);
            log_stage(stage, os.str());
        }

        stage = "energy";
        Trajectory traj_energy;
        traj_energy.tau = cfg.tau;
        traj_energy.outputs = traj.outputs.rightCols(4).array() + cfg.Q_0;
        traj_energy.inputs = traj.inputs;
        const EnergyColumns cols{0, 1, 2, 3};
        const EnergyReport rep =
            energy_rates(traj_energy, cfg, sched_abs, grid, cols);
        {
            std::ostringstream os;
            os << "G_P(T)=" << rep.G_P(rep.G_P.size() - 1)
               << " J, G_B(T)=" << rep.G_B(rep.G_B.size() - 1) << " J";
            log_stage(stage, os.str());
        }

        stage = "write";
        ArtifactSink sink(cfg.out_dir);
        {
            std::ofstream out = sink.open("hankel.csv");
            out << "i,sigma,rho\n";
            for (Eigen::Index i = 1; i <= hs.n0; ++i)
                out << i << ',' << num17(hs.sigma(i - 1)) << ','
                    << num17(selection_criterion(hs.sigma, i)) << "\n";
        }
        {
            nlohmann::ordered_json j;
            j["n"] = n;
            j["n0"] = hs.n0;
            j["alpha"] = cfg.alphas;
            nlohmann::ordered_json sets;
            for (std::size_t i = 0; i < res.set_names.size(); ++i) {
                nlohmann::ordered_json m;
                for (std::size_t k = 0; k < cfg.alphas.size(); ++k)
                    m[alpha_label(cfg.alphas[k])] = res.orders_by_set[i][k];
                sets[res.set_names[i]] = m;
            }
            j["sets"] = sets;
            std::ofstream out = sink.open("orders.json");
            out << j.dump(2) << "\n";
        }
        const Eigen::Index K = traj.steps();
        const auto each_row = [&](auto&& fn) {
            for (Eigen::Index k = 0; k <= K; k += cfg.csv_stride) fn(k);
            if (K % cfg.csv_stride != 0) fn(K);
        };
        {
            std::ofstream out = sink.open("outputs.csv");
            out << "t";
            for (Characteristic c : cfg.outputs) out << ',' << to_string(c);
            for (std::size_t i = 0; i < reds.size(); ++i)
                for (Characteristic c : cfg.outputs)
                    out << ',' << to_string(c) << "_l"
                        << std::to_string(ells[i]);
            out << "\n";
            each_row([&](Eigen::Index k) {
                out << num17(traj.time(k));
                for (Eigen::Index c = 0; c < k_out; ++c)
                    out << ',' << num17(Z_full_sh(k, c) + cfg.Q_0);
                for (const Reduced& rd : reds)
                    for (Eigen::Index c = 0; c < k_out; ++c)
                        out << ',' << num17(rd.Z_sh(k, c) + cfg.Q_0);
                out << "\n";
            });
        }
        {
            std::ofstream out = sink.open("errors.csv");
            out << "t";
            for (const Eigen::Index l : ells)
                out << ",e_l" << l << ",bound_l" << l;
            out << "\n";
            each_row([&](Eigen::Index k) {
                out << num17(traj.time(k));
                for (std::size_t i = 0; i < reds.size(); ++i)
                    out << ',' << num17(errs[i](k)) << ','
                        << num17(bounds[i](k));
                out << "\n";
            });
        }
        {
            std::ofstream out = sink.open("energy.csv");
            out << "t,R_P,R_B,G_P,G_B,G_M,G_F\n";
            each_row([&](Eigen::Index k) {
                out << num17(traj.time(k)) << ',' << num17(rep.R_P(k)) << ','
                    << num17(rep.R_B(k)) << ',' << num17(rep.G_P(k)) << ','
                    << num17(rep.G_B(k)) << ',' << num17(rep.G_M(k)) << ','
                    << num17(rep.G_F(k)) << "\n";
            });
        }
        sink.commit();
        res.artifacts = sink.names();
        log_stage(stage, std::to_string(res.artifacts.size()) +
                             " artifacts in " + cfg.out_dir);

        stage = "summary";
        {
            std::ostringstream os;
            os << "minimal orders by output set:";
            log_stage(stage, os.str());
            std::cout << "  set";
            for (double a : cfg.alphas) std::cout << "\tl_" << alpha_label(a);
            std::cout << "\n";
            for (std::size_t i = 0; i < res.set_names.size(); ++i) {
                std::cout << "  " << res.set_names[i];
                for (Eigen::Index l : res.orders_by_set[i])
                    std::cout << '\t' << l;
                std::cout << "\n";
            }
        }
        return res;
    } catch (const std::exception& e) {
        std::cerr << "[" << stage << "] failed: " << e.what() << std::endl;
        throw;
    }
}

}  // namespace gsmor
