#pragma once

#include <vector>

#include "gsmor/geometry.hpp"

namespace gsmor {

/// Role of a horizontal grid row j = 0..N_y.
enum class RowKind {
    Bottom,     // j = 0, Robin boundary
    Medium,     // interior medium row (state)
    Fluid,      // interior fluid row inside a PHX strip (state)
    Interface,  // fluid/medium interface row (eliminated)
    Top,        // j = N_y, insulated boundary
};

/// One PHX strip: interface rows j_bot and j_top, fluid interior rows
/// strictly between them.
struct PhxStrip {
    int j_bot;
    int j_top;
};

/// Uniform tensor grid over (0,l_x) x (0,l_y) with node (x_i, y_j),
/// x_i = i*h_x, y_j = j*h_y. State variables live on interior
/// non-interface nodes, ordered column-major: columns i = 1..N_x-1,
/// within a column the q state rows bottom to top. This ordering makes
/// the assembled system block tridiagonal with diagonal coupling blocks.
struct GridSpec {
    int N_x = 0;
    int N_y = 0;
    double h_x = 0.0;
    double h_y = 0.0;
    std::vector<PhxStrip> strips;

    std::vector<RowKind> row_kind;  // size N_y+1
    std::vector<int> state_rows;    // interior non-interface j, ascending
    std::vector<int> row_rank;      // j -> position in state_rows, else -1

    int q() const { return static_cast<int>(state_rows.size()); }
    int n() const { return (N_x - 1) * q(); }

    bool is_state_row(int j) const { return row_rank[j] >= 0; }
    bool is_fluid_row(int j) const { return row_kind[j] == RowKind::Fluid; }
    bool is_interface_row(int j) const {
        return row_kind[j] == RowKind::Interface;
    }
    /// True for the bottom interface of some strip (medium below, fluid above).
    bool interface_has_fluid_above(int j) const;

    /// Linear index of state node (i,j); i in 1..N_x-1, j a state row.
    int index(int i, int j) const { return (i - 1) * q() + row_rank[j]; }
    /// Checked variant; throws DomainError for non-state nodes.
    int index_checked(int i, int j) const;

    /// Inverse of index(): (i, j) of state variable l.
    std::pair<int, int> node_of(int l) const {
        const int i = l / q() + 1;
        return {i, state_rows[l % q()]};
    }

    double x(int i) const { return i * h_x; }
    double y(int j) const { return j * h_y; }
};

/// Lay the grid over the geometry and place the PHX strips.
///
/// Steps must divide the extents. Strip centers come from
/// geom.phx_centers (which must land exactly on grid rows) or default to
/// equal spacing snapped to the nearest row. The strip half-width in rows
/// is round(d_P/(2 h_y)), at least 1, so each strip owns two interface
/// rows and at least one fluid row. Placement must leave a medium state
/// row on each side of every interface; violations raise AlignmentError.
GridSpec build_grid(const StorageGeometry& geom, double h_x, double h_y);

}  // namespace gsmor
