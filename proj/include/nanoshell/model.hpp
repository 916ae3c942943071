#pragma once

#include "nanoshell/errors.hpp"

namespace nanoshell {

// Everything internal runs in Coulomb units: lengths in the Bohr radius a0,
// energies in E_a = e^2/a0 (one Hartree, two Rydberg). A bound level is
// parameterised by xi >= 0 through E = -xi^2 Ry = -(xi^2/2) E_a. Conversions
// to eV/nm happen only at the reporting boundary.

inline constexpr double kCoulombEnergyEv = 27.21;  // E_a
inline constexpr double kRydbergEv = kCoulombEnergyEv / 2.0;
inline constexpr double kBohrRadiusNm = 0.053;
inline constexpr double kHbarEvSec = 6.582119569e-16;

/// Spherical shell of radius eta (in a0) carrying one positive elementary
/// charge. The electron sees a flat floor -1/eta inside and -1/rho outside.
struct ShellParams {
    double eta = 50.0;
};

struct QuantumNumbers {
    int l = 0;   ///< orbital angular momentum
    int nr = 0;  ///< radial node count
};

/// Admissible xi range for bound states, (0, sqrt(2/eta)).
struct EnergyWindow {
    double xi_min = 0.0;
    double xi_max = 0.0;
    bool contains(double xi) const { return xi > xi_min && xi < xi_max; }
};

/// Potential energy in units of E_a: -1/eta for rho <= eta, -1/rho outside.
double potential_value(const ShellParams& p, double rho);

EnergyWindow xi_window(const ShellParams& p);

/// E in Rydberg: -xi^2.
double energy_ry_from_xi(double xi);

/// E in E_a: -xi^2 / 2.
double energy_ea_from_xi(double xi);

double eta_from_radius_nm(double radius_nm);
double radius_nm_from_eta(double eta);

// A level of the unit-charge problem maps onto shell charge z by
// xi -> z*xi, eta -> eta/z. The solvers always run at z = 1.
double xi_for_charge(double xi_unit, int z);
double eta_for_charge(double eta_unit, int z);

}  // namespace nanoshell
