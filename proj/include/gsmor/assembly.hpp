#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <string>
#include <vector>

#include "gsmor/grid.hpp"
#include "gsmor/material.hpp"

namespace gsmor {

enum class PumpMode { On, Off };

/// Aggregated scalar temperature characteristics.
enum class Characteristic {
    MediumAvg,  // area average over the medium
    FluidAvg,   // area average over the PHX fluid
    OutletAvg,  // average over the outlet cross-sections
    BottomAvg,  // average over the bottom boundary
};

Characteristic characteristic_from_string(const std::string& name);
std::string to_string(Characteristic c);

/// Semi-discretized storage model dY/dt = A Y + B g with aggregated
/// outputs Z = C Y. g = (inlet temperature, ground temperature).
struct DiscretizedSystem {
    Eigen::SparseMatrix<double> A;
    Eigen::MatrixXd B;  // n x 2
    Eigen::MatrixXd C;  // n_o x n
    GridSpec grid;
    double v0 = 0.0;
    double a_M = 0.0;   // medium diffusivity
    double a_F = 0.0;   // fluid diffusivity
    double beta_M = 0.0;  // a_M / h_y^2
};

/// Assemble the system matrix A: central differences for diffusion,
/// first-order upwind (+x flow) for convection on fluid rows, one-sided
/// elimination of boundary and interface nodes. v0 > 0 means the pump
/// runs and the inlet column is a Dirichlet boundary whose contribution
/// moves to the input matrix; v0 = 0 means pump off, the inlet column is
/// insulated and there is no convection.
Eigen::SparseMatrix<double> assemble_system(const GridSpec& grid,
                                            const MaterialParams& mat_M,
                                            const MaterialParams& mat_F,
                                            const StorageGeometry& geom,
                                            double v0);

/// Assemble the input matrix B. Column 1 carries the inlet coupling
/// a_F/h_x^2 + v0/h_x at rows (1,j) of fluid rows j; with analogous=true
/// it is present regardless of mode (the surrogate keeps the pump
/// running), otherwise only for mode==On. Column 2 carries the bottom
/// Robin coupling lambda_G h_y/(kappa_M + lambda_G h_y) * beta_M at rows
/// (i,1).
Eigen::MatrixXd assemble_input(const GridSpec& grid,
                               const MaterialParams& mat_M,
                               const MaterialParams& mat_F,
                               const StorageGeometry& geom, double v0,
                               PumpMode mode, bool analogous);

/// Assemble the output rows: trapezoidal quadrature of each requested
/// average, with boundary and interface nodes projected onto state nodes
/// by the constant-preserving part of the assembly elimination. Every row
/// is nonnegative and sums to one.
Eigen::MatrixXd assemble_outputs(const GridSpec& grid,
                                 const MaterialParams& mat_M,
                                 const MaterialParams& mat_F,
                                 const std::vector<Characteristic>& chars);

/// Convenience bundle of the three assembly steps.
DiscretizedSystem discretize(const StorageGeometry& geom,
                             const MaterialParams& mat_M,
                             const MaterialParams& mat_F, double h_x,
                             double h_y, double v0, PumpMode mode,
                             bool analogous,
                             const std::vector<Characteristic>& chars);

/// Largest real part of the spectrum of A (dense solve).
double verify_stability(const Eigen::MatrixXd& A);
double verify_stability(const Eigen::SparseMatrix<double>& A);

}  // namespace gsmor
