#pragma once

#include <vector>

#include "nanoshell/model.hpp"

namespace nanoshell {

/// Scaled residual of the eigenvalue condition at (l, xi). The equation is
/// used in the form cleared of the interior Bessel denominator, so it stays
/// finite at zeros of j_l; `pole` marks those points, where the sign chain
/// of a root scan must not cross.
struct DispersionEval {
    double value = 0.0;
    bool pole = false;
};

struct EigenSolution {
    QuantumNumbers qn;
    double xi = 0.0;
    double energy_ry = 0.0;
    double lambda_int = 0.0;  ///< interior wavenumber, lambda^2 + xi^2 = 2/eta
    double residual = 0.0;    ///< scaled dispersion residual at the root
};

/// find_levels reports what it found; fewer roots than requested is a state,
/// not an error.
struct LevelList {
    std::vector<EigenSolution> levels;  ///< descending xi, nr = 0, 1, ...
    int requested = 0;
    bool complete = false;  ///< found at least `requested` roots
};

DispersionEval dispersion(const ShellParams& p, int l, double xi);

LevelList find_levels(const ShellParams& p, int l, int nr_max);

/// Distance of a small-eta level from the Coulomb value 1/(nr + l + 1).
struct HydrogenDeviation {
    double xi = 0.0;
    double hydrogen_xi = 0.0;
    double deviation = 0.0;
};
HydrogenDeviation hydrogen_limit_check(double eta_small, int l, int nr);

/// Finite spherical well of depth v0 (E_a units) and radius r (a0), no
/// Coulomb tail: interior j_l matched to the decaying exterior solution.
/// Returns the scaled residual, cleared of the j_l denominator.
DispersionEval well_dispersion(double v0, double r, int l, double xi);

std::vector<double> find_well_levels(double v0, double r, int l, int max_count);

}  // namespace nanoshell
