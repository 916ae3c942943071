#include "nanoshell/model.hpp"

#include <cmath>
#include <string>

namespace nanoshell {

namespace {

void require_eta(double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw DomainError("shell radius eta must be positive, got " + std::to_string(eta));
}

}  // namespace

double potential_value(const ShellParams& p, double rho) {
    require_eta(p.eta);
    if (!(rho > 0.0)) throw DomainError("potential_value: rho must be positive");
    return rho <= p.eta ? -1.0 / p.eta : -1.0 / rho;
}

EnergyWindow xi_window(const ShellParams& p) {
    require_eta(p.eta);
    return {0.0, std::sqrt(2.0 / p.eta)};
}

double energy_ry_from_xi(double xi) { return -xi * xi; }

double energy_ea_from_xi(double xi) { return -0.5 * xi * xi; }

double eta_from_radius_nm(double radius_nm) {
    if (!(radius_nm > 0.0)) throw DomainError("shell radius must be positive");
    return radius_nm / kBohrRadiusNm;
}

double radius_nm_from_eta(double eta) {
    require_eta(eta);
    return eta * kBohrRadiusNm;
}

double xi_for_charge(double xi_unit, int z) {
    if (z < 1) throw DomainError("shell charge must be a positive integer");
    return xi_unit * z;
}

double eta_for_charge(double eta_unit, int z) {
    if (z < 1) throw DomainError("shell charge must be a positive integer");
    return eta_unit / z;
}

}  // namespace nanoshell
