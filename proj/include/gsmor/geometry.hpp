#pragma once

#include <vector>

#include "gsmor/errors.hpp"

namespace gsmor {

/// Rectangular storage cross-section (0,l_x) x (0,l_y), extruded depth l_z,
/// with n_P straight horizontal pipe heat exchangers of diameter d_P.
/// phx_centers holds the centerline heights (m); empty means equally spaced
/// defaults at l_y*k/(n_P+1), k = 1..n_P.
struct StorageGeometry {
    double l_x = 10.0;
    double l_y = 1.0;
    double l_z = 1.0;
    double d_P = 0.02;
    int n_P = 1;
    std::vector<double> phx_centers;
    double lambda_G = 10.0;  // bottom heat-transfer coefficient [W/(m^2 K)]

    void validate() const {
        if (!(l_x > 0.0) || !(l_y > 0.0) || !(l_z > 0.0))
            throw DomainError("geometry: extents must be positive");
        if (!(d_P > 0.0)) throw DomainError("geometry: d_P must be positive");
        if (n_P < 1) throw DomainError("geometry: n_P must be at least 1");
        if (!(lambda_G >= 0.0))
            throw DomainError("geometry: lambda_G must be nonnegative");
        if (!phx_centers.empty() &&
            static_cast<int>(phx_centers.size()) != n_P)
            throw DomainError("geometry: phx_centers size must equal n_P");
        for (double y : phx_centers)
            if (!(y > 0.0) || !(y < l_y))
                throw DomainError("geometry: PHX centerline outside (0, l_y)");
    }
};

}  // namespace gsmor
