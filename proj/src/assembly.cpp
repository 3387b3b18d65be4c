#include "gsmor/assembly.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <utility>

namespace gsmor {

Characteristic characteristic_from_string(const std::string& name) {
    if (name == "Qm") return Characteristic::MediumAvg;
    if (name == "Qf") return Characteristic::FluidAvg;
    if (name == "Qo") return Characteristic::OutletAvg;
    if (name == "Qb") return Characteristic::BottomAvg;
    throw ConfigError("unknown output characteristic: " + name);
}

std::string to_string(Characteristic c) {
    switch (c) {
        case Characteristic::MediumAvg: return "Qm";
        case Characteristic::FluidAvg: return "Qf";
        case Characteristic::OutletAvg: return "Qo";
        case Characteristic::BottomAvg: return "Qb";
    }
    throw ConfigError("invalid characteristic enum value");
}

namespace {

// Interface temperature as a conductivity-weighted mean of its vertical
// neighbors: weight pair (below, above).
std::pair<double, double> interface_weights(const GridSpec& grid, int j,
                                            double kappa_M, double kappa_F) {
    const double s = kappa_M + kappa_F;
    if (grid.interface_has_fluid_above(j))
        return {kappa_M / s, kappa_F / s};  // medium below, fluid above
    return {kappa_F / s, kappa_M / s};      // fluid below, medium above
}

}  // namespace

Eigen::SparseMatrix<double> assemble_system(const GridSpec& grid,
                                            const MaterialParams& mat_M,
                                            const MaterialParams& mat_F,
                                            const StorageGeometry& geom,
                                            double v0) {
    if (v0 < 0.0) throw DomainError("assemble_system: v0 must be nonnegative");
    geom.validate();
    const double a_M = thermal_diffusivity(mat_M);
    const double a_F = thermal_diffusivity(mat_F);
    const bool pump_on = v0 > 0.0;

    const double hx2 = grid.h_x * grid.h_x;
    const double hy2 = grid.h_y * grid.h_y;
    // Bottom Robin elimination: Q(i,0) = cR*Q(i,1) + (1-cR)*Q_G.
    const double cR = mat_M.kappa / (mat_M.kappa + geom.lambda_G * grid.h_y);

    const int n = grid.n();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(n) * 6);

    for (int l = 0; l < n; ++l) {
        const auto [i, j] = grid.node_of(l);
        const bool fluid = grid.is_fluid_row(j);
        const double a = fluid ? a_F : a_M;
        const double cx = a / hx2;
        const double cy = a / hy2;
        double diag = -2.0 * cx - 2.0 * cy;

        // East neighbor; the right boundary is insulated for all rows.
        if (i + 1 <= grid.N_x - 1)
            trips.emplace_back(l, grid.index(i + 1, j), cx);
        else
            diag += cx;

        // West neighbor; the inlet column is Dirichlet while pumping
        // (contribution moves to B), insulated otherwise.
        double west = cx;
        if (fluid && pump_on) {
            diag -= v0 / grid.h_x;
            west += v0 / grid.h_x;
        }
        if (i - 1 >= 1)
            trips.emplace_back(l, grid.index(i - 1, j), west);
        else if (!(fluid && pump_on))
            diag += west;

        // Vertical neighbors; interface rows split their coupling between
        // the nodes on either side, boundary rows fold back per their
        // condition.
        for (int dir : {-1, +1}) {
            const int jn = j + dir;
            if (grid.is_state_row(jn)) {
                trips.emplace_back(l, grid.index(i, jn), cy);
            } else if (jn == 0) {
                diag += cy * cR;
            } else if (jn == grid.N_y) {
                diag += cy;
            } else {
                const auto [w_below, w_above] =
                    interface_weights(grid, jn, mat_M.kappa, mat_F.kappa);
                const double w_self = (dir > 0) ? w_below : w_above;
                const double w_far = (dir > 0) ? w_above : w_below;
                diag += cy * w_self;
                trips.emplace_back(l, grid.index_checked(i, jn + dir),
                                   cy * w_far);
            }
        }
        trips.emplace_back(l, l, diag);
    }

    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    return A;
}

Eigen::MatrixXd assemble_input(const GridSpec& grid,
                               const MaterialParams& mat_M,
                               const MaterialParams& mat_F,
                               const StorageGeometry& geom, double v0,
                               PumpMode mode, bool analogous) {
    if (v0 < 0.0) throw DomainError("assemble_input: v0 must be nonnegative");
    geom.validate();
    const double a_F = thermal_diffusivity(mat_F);
    const double beta_M = thermal_diffusivity(mat_M) / (grid.h_y * grid.h_y);

    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(grid.n(), 2);

    if (analogous || mode == PumpMode::On) {
        const double b1 = a_F / (grid.h_x * grid.h_x) + v0 / grid.h_x;
        for (const PhxStrip& s : grid.strips)
            for (int j = s.j_bot + 1; j < s.j_top; ++j)
                B(grid.index(1, j), 0) = b1;
    }

    const double cG = geom.lambda_G * grid.h_y /
                      (mat_M.kappa + geom.lambda_G * grid.h_y);
    for (int i = 1; i <= grid.N_x - 1; ++i) B(grid.index(i, 1), 1) = cG * beta_M;

    return B;
}

namespace {

// Express the temperature at any grid node as a convex combination of
// state-node temperatures: boundary nodes map to their interior neighbor
// (the constant-preserving part of the assembly elimination), interface
// nodes split by conductivity. Used for the output quadrature rows.
void accumulate_projected(const GridSpec& grid, double kappa_M, double kappa_F,
                          int i, int j, double w, Eigen::VectorXd& row) {
    const int ii = (i == 0) ? 1 : (i == grid.N_x ? grid.N_x - 1 : i);
    if (grid.is_state_row(j)) {
        row[grid.index(ii, j)] += w;
    } else if (j == 0) {
        row[grid.index(ii, 1)] += w;
    } else if (j == grid.N_y) {
        row[grid.index(ii, grid.N_y - 1)] += w;
    } else {
        const auto [w_below, w_above] =
            interface_weights(grid, j, kappa_M, kappa_F);
        row[grid.index_checked(ii, j - 1)] += w * w_below;
        row[grid.index_checked(ii, j + 1)] += w * w_above;
    }
}

// Tensor trapezoid weights over the full width and rows ja..jb.
void slab_average(const GridSpec& grid, double kappa_M, double kappa_F, int ja,
                  int jb, Eigen::VectorXd& row) {
    for (int j = ja; j <= jb; ++j) {
        const double wy = (j == ja || j == jb) ? 0.5 : 1.0;
        for (int i = 0; i <= grid.N_x; ++i) {
            const double wx = (i == 0 || i == grid.N_x) ? 0.5 : 1.0;
            accumulate_projected(grid, kappa_M, kappa_F, i, j, wx * wy, row);
        }
    }
}

}  // namespace

Eigen::MatrixXd assemble_outputs(const GridSpec& grid,
                                 const MaterialParams& mat_M,
                                 const MaterialParams& mat_F,
                                 const std::vector<Characteristic>& chars) {
    if (chars.empty())
        throw ConfigError("assemble_outputs: empty characteristic list");
    const double kM = mat_M.kappa;
    const double kF = mat_F.kappa;

    Eigen::MatrixXd C(chars.size(), grid.n());
    for (size_t r = 0; r < chars.size(); ++r) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(grid.n());
        switch (chars[r]) {
            case Characteristic::MediumAvg: {
                int ja = 0;
                for (const PhxStrip& s : grid.strips) {
                    slab_average(grid, kM, kF, ja, s.j_bot, row);
                    ja = s.j_top;
                }
                slab_average(grid, kM, kF, ja, grid.N_y, row);
                break;
            }
            case Characteristic::FluidAvg:
                for (const PhxStrip& s : grid.strips)
                    slab_average(grid, kM, kF, s.j_bot, s.j_top, row);
                break;
            case Characteristic::OutletAvg:
                for (const PhxStrip& s : grid.strips) {
                    const int ja = s.j_bot + 1, jb = s.j_top - 1;
                    for (int j = ja; j <= jb; ++j) {
                        const double wy =
                            (jb > ja && (j == ja || j == jb)) ? 0.5 : 1.0;
                        accumulate_projected(grid, kM, kF, grid.N_x, j, wy, row);
                    }
                }
                break;
            case Characteristic::BottomAvg:
                for (int i = 0; i <= grid.N_x; ++i) {
                    const double wx = (i == 0 || i == grid.N_x) ? 0.5 : 1.0;
                    accumulate_projected(grid, kM, kF, i, 0, wx, row);
                }
                break;
        }
        C.row(r) = row / row.sum();
    }
    return C;
}

DiscretizedSystem discretize(const StorageGeometry& geom,
                             const MaterialParams& mat_M,
                             const MaterialParams& mat_F, double h_x,
                             double h_y, double v0, PumpMode mode,
                             bool analogous,
                             const std::vector<Characteristic>& chars) {
    DiscretizedSystem sys;
    sys.grid = build_grid(geom, h_x, h_y);
    const double v_eff = (analogous || mode == PumpMode::On) ? v0 : 0.0;
    sys.A = assemble_system(sys.grid, mat_M, mat_F, geom, v_eff);
    sys.B = assemble_input(sys.grid, mat_M, mat_F, geom, v0, mode, analogous);
    sys.C = assemble_outputs(sys.grid, mat_M, mat_F, chars);
    sys.v0 = v0;
    sys.a_M = thermal_diffusivity(mat_M);
    sys.a_F = thermal_diffusivity(mat_F);
    sys.beta_M = sys.a_M / (h_y * h_y);
    return sys;
}

double verify_stability(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols())
        throw ShapeError("verify_stability: matrix must be square");
    if (!A.allFinite())
        throw DomainError("verify_stability: matrix has non-finite entries");
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw Error("verify_stability: eigenvalue iteration failed");
    return es.eigenvalues().real().maxCoeff();
}

double verify_stability(const Eigen::SparseMatrix<double>& A) {
    return verify_stability(Eigen::MatrixXd(A));
}

}  // namespace gsmor
