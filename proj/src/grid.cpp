#include "gsmor/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gsmor {

namespace {

// Number of steps h in an extent L; GridError unless h divides L.
int divide_extent(double L, double h, const char* name) {
    if (!(h > 0.0)) throw GridError(std::string(name) + ": step must be positive");
    const double ratio = L / h;
    const long long N = std::llround(ratio);
    if (N < 2 || std::abs(ratio - static_cast<double>(N)) > 1e-9 * ratio)
        throw GridError(std::string(name) + ": step does not divide the extent");
    return static_cast<int>(N);
}

}  // namespace

bool GridSpec::interface_has_fluid_above(int j) const {
    for (const PhxStrip& s : strips)
        if (s.j_bot == j) return true;
    return false;
}

int GridSpec::index_checked(int i, int j) const {
    if (i < 1 || i > N_x - 1 || j < 0 || j > N_y || row_rank[j] < 0)
        throw DomainError("grid: not a state node");
    return index(i, j);
}

GridSpec build_grid(const StorageGeometry& geom, double h_x, double h_y) {
    geom.validate();

    GridSpec g;
    g.h_x = h_x;
    g.h_y = h_y;
    g.N_x = divide_extent(geom.l_x, h_x, "h_x");
    g.N_y = divide_extent(geom.l_y, h_y, "h_y");

    // Strip half-width in rows. A strip spans [j_c-w, j_c+w]; the outer
    // rows are interfaces, the inner ones fluid.
    const int w = std::max(1LL, std::llround(geom.d_P / (2.0 * h_y)));

    std::vector<int> centers;
    if (geom.phx_centers.empty()) {
        for (int k = 1; k <= geom.n_P; ++k) {
            const double yc = geom.l_y * k / (geom.n_P + 1);
            centers.push_back(static_cast<int>(std::llround(yc / h_y)));
        }
    } else {
        for (double yc : geom.phx_centers) {
            const double r = yc / h_y;
            const long long j = std::llround(r);
            if (std::abs(r - static_cast<double>(j)) > 1e-9 * g.N_y)
                throw AlignmentError("PHX centerline does not lie on a grid row");
            centers.push_back(static_cast<int>(j));
        }
        std::sort(centers.begin(), centers.end());
    }

    for (int jc : centers) {
        // Interface rows need a state row next to them on both sides, so
        // the strip must keep one medium row clear of each boundary.
        if (jc - w < 2 || jc + w > g.N_y - 2)
            throw AlignmentError(
                "PHX strip too close to the bottom/top boundary for this grid");
        g.strips.push_back({jc - w, jc + w});
    }
    for (size_t k = 1; k < g.strips.size(); ++k) {
        // At least one medium row between consecutive strips.
        if (g.strips[k].j_bot - g.strips[k - 1].j_top < 2)
            throw AlignmentError("PHX strips overlap or touch on this grid");
    }

    g.row_kind.assign(g.N_y + 1, RowKind::Medium);
    g.row_kind[0] = RowKind::Bottom;
    g.row_kind[g.N_y] = RowKind::Top;
    for (const PhxStrip& s : g.strips) {
        g.row_kind[s.j_bot] = RowKind::Interface;
        g.row_kind[s.j_top] = RowKind::Interface;
        for (int j = s.j_bot + 1; j < s.j_top; ++j)
            g.row_kind[j] = RowKind::Fluid;
    }

    g.row_rank.assign(g.N_y + 1, -1);
    for (int j = 1; j < g.N_y; ++j) {
        if (g.row_kind[j] == RowKind::Medium || g.row_kind[j] == RowKind::Fluid) {
            g.row_rank[j] = static_cast<int>(g.state_rows.size());
            g.state_rows.push_back(j);
        }
    }

    if (g.q() != g.N_y - 2 * geom.n_P - 1)
        throw GridError("grid: state row count does not match the PHX layout");
    return g;
}

}  // namespace gsmor
