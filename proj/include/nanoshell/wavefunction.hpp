#pragma once

#include <utility>
#include <vector>

#include "nanoshell/exact.hpp"
#include "nanoshell/model.hpp"

namespace nanoshell {

// Normalized piecewise radial eigenfunction
//   phi(rho) = C * j_l(lambda rho)/j_l(lambda eta)              rho <= eta
//   phi(rho) = C * (rho/eta)^l e^{-xi(rho-eta)} U(a,2l+2,2 xi rho)
//                                             / U(a,2l+2,2 xi eta)   rho >= eta
// with a = l+1-1/xi. Both branch ratios equal 1 at rho = eta, so phi(eta) = C.
// The exterior factor is assembled in log form; nothing overflows for large rho.
class RadialWavefunction {
  public:
    RadialWavefunction(const ShellParams& params, const EigenSolution& solution);

    double operator()(double rho) const;      // branch picked by rho vs eta
    double interior_branch(double rho) const;  // analytic continuation allowed
    double exterior_branch(double rho) const;  // analytic continuation allowed

    double norm_c() const { return c_; }
    double rho_max() const { return rho_max_; }
    const EigenSolution& solution() const { return solution_; }
    const ShellParams& params() const { return params_; }

    // Interior zeros of phi on (0, rho_max), by dense sign scan of each branch.
    int count_nodes() const;

  private:
    ShellParams params_;
    EigenSolution solution_;
    double a_ = 0.0;        // U parameter l+1-1/xi
    double b_ = 0.0;        // U parameter 2l+2
    double jl_eta_ = 0.0;   // j_l(lambda eta)
    double ln_u_eta_ = 0.0;  // ln |U(a,b,2 xi eta)| including its log scale
    int sign_u_eta_ = 1;
    double rho_max_ = 0.0;  // eta + 40/xi
    double c_ = 1.0;        // normalization constant, fixed by the constructor

    double exterior_log_ratio(double rho, int* sign) const;
};

// Factory mirroring the way eigensolutions are produced: solve, then normalize.
RadialWavefunction normalize(const EigenSolution& solution, const ShellParams& params);

// Electron distribution function D(rho) = rho^2 phi^2 on a strictly
// increasing positive grid.
std::vector<std::pair<double, double>> distribution(
    const RadialWavefunction& wf, const std::vector<double>& rho_grid);

// <rho^2> = integral rho^4 phi^2 d rho, in Bohr-radius-squared units.
double r2_expectation(const RadialWavefunction& wf);

struct ExcitationEnergy {
    double ground_xi = 0.0;    // (l=0, nr=0)
    double excited_xi = 0.0;   // (l=1, nr=0), the first level above the ground
    double delta_e_ry = 0.0;   // ground_xi^2 - excited_xi^2
};

// Gap between the ground state and the first excited state.
ExcitationEnergy excitation_energy(const ShellParams& params);

// Transition angular frequency Delta E / hbar for a gap given in Ry, reported
// in units of 10^12 rad/s (the THz scale).
double transition_frequency_thz(double delta_e_ry);

}  // namespace nanoshell
