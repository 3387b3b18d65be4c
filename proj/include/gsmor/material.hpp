#pragma once

#include "gsmor/errors.hpp"

namespace gsmor {

/// Homogeneous, isotropic material: density [kg/m^3], specific heat
/// capacity [J/(kg K)], thermal conductivity [W/(m K)].
struct MaterialParams {
    double rho;
    double c_p;
    double kappa;

    void validate() const {
        if (!(rho > 0.0)) throw DomainError("material: rho must be positive");
        if (!(c_p > 0.0)) throw DomainError("material: c_p must be positive");
        if (!(kappa > 0.0)) throw DomainError("material: kappa must be positive");
    }
};

/// a = kappa / (rho * c_p)  [m^2/s]
inline double thermal_diffusivity(const MaterialParams& m) {
    m.validate();
    return m.kappa / (m.rho * m.c_p);
}

}  // namespace gsmor
