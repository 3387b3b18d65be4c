#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gsmor/assembly.hpp"
#include "gsmor/errors.hpp"
#include "gsmor/lti.hpp"

namespace gsmor {

/// Full description of one batch run: storage, materials, temperatures,
/// discretization, schedule and reduction settings. Defaults reproduce
/// the reference setup at full resolution; grid_scale coarsens h_x, h_y
/// uniformly for desk runs.
struct ExperimentConfig {
    StorageGeometry geom;
    MaterialParams medium{2000.0, 800.0, 1.59};
    MaterialParams fluid{998.0, 4182.0, 0.60};
    double v0 = 1e-2;   // pump velocity while pumping [m/s]
    double Q_0 = 10.0;  // initial storage temperature [C]
    double Q_C = 40.0;  // inlet temperature while charging [C]
    double Q_D = 5.0;   // inlet temperature while discharging [C]
    double Q_G = 15.0;  // ground temperature below the storage [C]
    double h_x = 0.1;
    double h_y = 0.01;
    double grid_scale = 1.0;
    double tau = 1.0;            // time step [s]
    double horizon_hours = 72.0;
    std::vector<Interval> charging_hours{{0.0, 36.0}};
    std::vector<Interval> discharging_hours{{36.0, 72.0}};
    std::vector<Characteristic> outputs{Characteristic::MediumAvg};
    std::vector<Eigen::Index> orders{1, 2, 4, 8};
    std::vector<double> alphas{0.9, 0.95, 0.99};
    TimeScheme scheme = TimeScheme::ImplicitEuler;
    std::string out_dir = "out";
    bool full_grid = false;  // opt-in for state dimensions above 5000
    int csv_stride = 1;      // write every k-th sample to the series CSVs

    double h_x_eff() const { return h_x * grid_scale; }
    double h_y_eff() const { return h_y * grid_scale; }
    double horizon_seconds() const { return horizon_hours * 3600.0; }
    void validate() const;
};

/// Parse a sectioned key=value config file; keys and units match the
/// parameter-table names. Missing keys keep their defaults; unknown or
/// duplicate keys raise ConfigError.
ExperimentConfig load_config(const std::string& path);

/// Column positions of the aggregated characteristics inside a
/// trajectory's output block; -1 marks an absent column.
struct EnergyColumns {
    Eigen::Index Qm = -1;
    Eigen::Index Qf = -1;
    Eigen::Index Qo = -1;
    Eigen::Index Qb = -1;
};

/// Pump and bottom energy-exchange rates [W/m] with their running time
/// integrals [J, depth factor l_z included], plus stored-energy gains of
/// the medium and fluid domains from the initial time.
struct EnergyReport {
    Eigen::VectorXd R_P;  // pump injection/extraction rate per depth
    Eigen::VectorXd R_B;  // bottom-boundary exchange rate per depth
    Eigen::VectorXd G_P;  // running integral of R_P times l_z
    Eigen::VectorXd G_B;  // running integral of R_B times l_z
    Eigen::VectorXd G_M;  // running medium heat gain
    Eigen::VectorXd G_F;  // running fluid heat gain
    double area_outlet = 0.0;  // total outlet cross-section per depth [m]
    double area_bottom = 0.0;  // bottom boundary length [m]
    double vol_medium = 0.0;   // medium cross-section area [m^2]
    double vol_fluid = 0.0;    // fluid cross-section area [m^2]
};

/// Energy accounting of an unshifted trajectory. The pump velocity is
/// v0 while charging or discharging and 0 while waiting; rates use the
/// grid-consistent outlet/bottom extents of the given grid. Requires the
/// outlet and bottom averages; medium/fluid gains need their averages.
EnergyReport energy_rates(const Trajectory& traj, const ExperimentConfig& cfg,
                          const Schedule& sched, const GridSpec& grid,
                          const EnergyColumns& cols);

/// Running L2 error e(t_k) = ||Z - Z_tilde||_{L2(0,t_k)} on the tau-grid
/// (left-endpoint rule). Nondecreasing in k.
Eigen::VectorXd l2_error(const Eigen::MatrixXd& Z,
                         const Eigen::MatrixXd& Z_tilde, double tau);

/// Key figures of a finished run, returned alongside the on-disk
/// artifacts for programmatic inspection.
struct ExperimentResult {
    int n = 0;                 // full state dimension
    Eigen::Index n0 = 0;       // retained Hankel values
    Eigen::VectorXd sigma;     // Hankel values of the configured output set
    std::vector<std::string> set_names;  // nested output-set prefixes
    std::vector<std::vector<Eigen::Index>> orders_by_set;  // [set][alpha]
    std::vector<Eigen::Index> simulated_orders;
    std::vector<double> proj_defects;  // per simulated order
    std::vector<double> max_errors;    // max_t |Z - Z_tilde| per order
    std::vector<std::string> artifacts;
};

/// Run the full experiment: assemble, shift, reduce, simulate full and
/// reduced systems, account energies, and write hankel.csv, orders.json,
/// outputs.csv, errors.csv, energy.csv into cfg.out_dir. Any stage error
/// aborts the run with a stage-labeled diagnostic on stderr and removes
/// partially written artifacts.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace gsmor
