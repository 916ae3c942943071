#pragma once

#include <vector>

#include "nanoshell/exact.hpp"
#include "nanoshell/model.hpp"

namespace nanoshell {

// Direct numerical route to the same eigenvalues: integrate the radial
// equation for u = rho * phi outward from the origin and inward from far
// outside, and demand a continuous logarithmic derivative at the matching
// radius. Serves as an independent check on the closed-form machinery.

struct BranchState {
    double u = 0.0;        // scaled u at the matching radius
    double du = 0.0;       // scaled u' at the matching radius
    double log_scale = 0.0;  // ln of the factor taken out of (u, du)
    int sign_changes = 0;  // accepted-step sign changes along the branch
};

struct ShootGrid {
    double rho0 = 0.0;      // inner start of the outward branch
    double rho_match = 0.0;  // matching radius (the potential kink)
    double rho_max = 0.0;   // outer start of the inward branch
    long interior_steps = 0;  // accepted steps, outward branch
    long exterior_steps = 0;  // accepted steps, inward branch
};

struct ShootResult {
    double xi = 0.0;
    double log_derivative_mismatch = 0.0;  // |u_i'/u_i - u_e'/u_e| at the match
    int node_count = 0;                    // radial nodes, should equal nr
    ShootGrid grid;
};

// Outward branch on (rho0, rho_match) with constant potential -v0, i.e.
// u'' + (2 v0 - xi^2 - l(l+1)/rho^2) u = 0, seeded by the regular power law.
BranchState integrate_interior(double v0, double rho_match, int l, double xi);

// Inward branch on (rho_match, rho_max) with potential -charge/rho, seeded at
// rho_max by the optimally truncated decaying series
//   u ~ e^{-xi rho} rho^{charge/xi} (1 + a1/rho + a2/rho^2 + ...).
BranchState integrate_exterior(double charge, double rho_match, double rho_max,
                               int l, double xi);

// Shell-problem log-derivatives u'/u at rho = eta for the two branches.
double interior_log_derivative(const ShellParams& p, int l, double xi);
double exterior_log_derivative(const ShellParams& p, int l, double xi);

// Bisect the branch Wronskian u_i' u_e - u_i u_e' on [xi_lo, xi_hi] (whose
// endpoints must straddle a sign change) down to a width of 1e-13.
ShootResult shoot(const ShellParams& p, int l, double xi_lo, double xi_hi);

// Shoot inside an expanding bracket centred on xi_guess.
ShootResult find_level_near(const ShellParams& p, int l, double xi_guess);

// Grid scan + shoot, mirroring find_levels. residual holds the
// log-derivative mismatch.
LevelList oracle_find_levels(const ShellParams& p, int l, int nr_max);

// Sample phi = u/rho at the given ascending radii, normalised to
// phi(eta) = 1. Radii must lie in [1e-6, eta + 40/xi].
std::vector<double> oracle_wavefunction(const ShellParams& p, int l, double xi,
                                        const std::vector<double>& rho);

// Same shooting match for the finite square well of depth v0 and radius r
// (no Coulomb tail outside).
ShootResult well_shoot(double v0, double r, int l, double xi_lo, double xi_hi);

}  // namespace nanoshell
