#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gsmor/assembly.hpp"
#include "gsmor/experiments.hpp"
#include "gsmor/grid.hpp"
#include "gsmor/sparse_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Thermal storage model reduction: assemble, balance, "
                 "truncate, simulate, and write the run artifacts"};
    std::string config_path;
    std::string out_dir;
    std::string scheme;
    double grid_scale = 0.0;
    std::vector<long> orders;
    std::vector<double> alphas;
    bool full_grid = false;
    bool export_matrices = false;

    app.add_option("--config", config_path, "experiment config file");
    app.add_option("--grid-scale", grid_scale,
                   "uniform coarsening factor applied to h_x and h_y");
    app.add_option("--orders", orders, "reduced orders to simulate")
        ->delimiter(',');
    app.add_option("--alpha", alphas, "selection thresholds in (0, 1]")
        ->delimiter(',');
    app.add_option("--out-dir", out_dir, "artifact output directory");
    app.add_flag("--full-grid", full_grid,
                 "allow state dimensions above 5000");
    app.add_option("--scheme", scheme, "time scheme")
        ->check(CLI::IsMember({"euler", "trapezoid"}));
    app.add_flag("--export-matrices", export_matrices,
                 "also write A, B, C as 'row col value' triplet files");
    CLI11_PARSE(app, argc, argv);

    try {
        gsmor::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = gsmor::load_config(config_path);
        if (grid_scale > 0.0) cfg.grid_scale = grid_scale;
        if (!orders.empty()) cfg.orders.assign(orders.begin(), orders.end());
        if (!alphas.empty()) cfg.alphas = alphas;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (full_grid) cfg.full_grid = true;
        if (scheme == "euler") cfg.scheme = gsmor::TimeScheme::ImplicitEuler;
        if (scheme == "trapezoid") cfg.scheme = gsmor::TimeScheme::Trapezoid;

        if (export_matrices) {
            const gsmor::DiscretizedSystem sys = gsmor::discretize(
                cfg.geom, cfg.medium, cfg.fluid, cfg.h_x_eff(), cfg.h_y_eff(),
                cfg.v0, gsmor::PumpMode::On, true, cfg.outputs);
            std::filesystem::create_directories(cfg.out_dir);
            const auto dump = [&](const std::string& name, auto&& m) {
                std::ofstream out(std::filesystem::path(cfg.out_dir) / name);
                if (!out)
                    throw gsmor::Error("cannot open " + name + " for writing");
                gsmor::write_triplets(out, m);
            };
            dump("A.txt", sys.A);
            dump("B.txt", sys.B);
            dump("C.txt", sys.C);
            std::cout << "[export] A.txt B.txt C.txt in " << cfg.out_dir
                      << std::endl;
        }

        gsmor::run_experiment(cfg);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
