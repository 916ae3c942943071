#pragma once

#include <vector>

#include "nanoshell/model.hpp"

namespace nanoshell {

// Semiclassical route. With the Langer substitution l(l+1) -> L^2, L = l+1/2,
// the squared radial momentum is
//   Q^2 = 2/eta - xi^2 - L^2/rho^2   inside the shell,
//   Q^2 = 2/rho - xi^2 - L^2/rho^2  outside,
// and quantization demands the phase integral between turning points equal
// pi (nr + 1/2).

struct TurningPoints {
    enum class Regime {
        two_piece,     // inner turning point inside the shell
        coulomb_only,  // both turning points outside
    };
    double inner = 0.0;
    double outer = 0.0;
    Regime regime = Regime::two_piece;
};

// Turning points at the given xi. Requires xi*L < 1 (otherwise no classical
// Coulomb region exists) and xi inside the bound window.
TurningPoints turning_points(const ShellParams& p, int l, double xi);

struct WkbLevel {
    enum class Regime {
        hydrogen_window,  // window admits the hydrogen value 1/(l+nr+1)
        transcendental,   // root of the closed-form quantization function
        outside_validity,
    };
    QuantumNumbers qn;
    double xi = 0.0;
    Regime regime = Regime::transcendental;
    TurningPoints tp;        // evaluated at the solved xi
    double residual = 0.0;   // quantization function at the solved xi
};

// Closed-form quantization function whose root in xi defines the level: with
// s = sqrt(1-(xi L)^2),
//   F = arcsin[(1-L^2/eta)/s] - arccos[L/sqrt(2 eta - (xi eta)^2)]
//     + (1/(xi L)) arcsin[(1-xi^2 eta)/s] - (pi/L)[nr + (L+1-1/xi)/2].
// Defined exactly on the window xi^2 <= min(1/L^2, 2/eta - (L/eta)^2), where
// every inverse-trig argument is provably in [-1, 1]; arguments within 1e-12
// of the boundary are clamped, larger excursions raise RegimeError.
double quantization_residual(const ShellParams& p, const QuantumNumbers& qn,
                             double xi);

// Level via the hydrogen window if it applies, else via the root of the
// quantization function. Validity demands l <= sqrt(2 eta) - 1/2.
WkbLevel wkb_level(const ShellParams& p, const QuantumNumbers& qn);

// The quantization phase integral of Q between the turning points at xi,
// evaluated by adaptive quadrature with square-root substitutions at the
// endpoints.
double phase_integral(const ShellParams& p, int l, double xi);

// Independent route: solve integral(Q) = pi (nr + 1/2) directly. Must agree
// with wkb_level to 1e-6 in xi.
WkbLevel wkb_level_from_phase_integral(const ShellParams& p,
                                       const QuantumNumbers& qn);

// Centered finite-difference slope d xi / d eta at fixed (l, nr); h = 0
// selects the default eta * 1e-3. Both stencil points must solve in the
// transcendental regime, otherwise RegimeError.
double xi_eta_slope(const ShellParams& p, const QuantumNumbers& qn,
                    double h = 0.0);

struct WkbDeviation {
    QuantumNumbers qn;
    double exact_xi = 0.0;
    double wkb_xi = 0.0;
    double deviation = 0.0;  // |exact - wkb|
};

struct DeviationSummary {
    std::vector<WkbDeviation> rows;
    double max_deviation = 0.0;
    double median_deviation = 0.0;
};

// Per-state |xi_exact - xi_wkb| over l <= lmax, nr <= nrmax.
DeviationSummary wkb_vs_exact(const ShellParams& p, int lmax, int nrmax);

}  // namespace nanoshell
