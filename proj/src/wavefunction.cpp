#include "nanoshell/wavefunction.hpp"

#include <cmath>
#include <string>

#include "nanoshell/errors.hpp"
#include "nanoshell/quadrature.hpp"
#include "nanoshell/specfun.hpp"

namespace nanoshell {

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

}  // namespace

RadialWavefunction::RadialWavefunction(const ShellParams& params,
                                       const EigenSolution& solution)
    : params_(params), solution_(solution) {
    double xi = solution_.xi;
    if (!xi_window(params_).contains(xi))
        throw DomainError("RadialWavefunction: xi outside the bound window");
    int l = solution_.qn.l;
    a_ = l + 1.0 - 1.0 / xi;
    b_ = 2.0 * l + 2.0;
    double lambda = std::sqrt(2.0 / params_.eta - xi * xi);
    solution_.lambda_int = lambda;
    jl_eta_ = specfun::spherical_bessel_j(l, lambda * params_.eta);
    if (jl_eta_ == 0.0)
        throw ConvergenceError(
            "RadialWavefunction: interior Bessel factor vanishes at eta; "
            "xi is not an eigenvalue of this l");
    specfun::UEvaluation ue = specfun::confluent_u(a_, b_, 2.0 * xi * params_.eta);
    if (ue.value == 0.0)
        throw ConvergenceError("RadialWavefunction: U vanishes at eta");
    ln_u_eta_ = std::log(std::fabs(ue.value)) + ue.log_scale;
    sign_u_eta_ = sign_of(ue.value);
    rho_max_ = params_.eta + 40.0 / xi;

    // Normalization: c_ = 1 while the two branch integrals are accumulated,
    // then fixed so that the full integral of rho^2 phi^2 is 1.
    auto f = [this](double rho) {
        double p = (*this)(rho);
        return rho * rho * p * p;
    };
    double split = std::min(params_.eta / 8.0, 1.0);
    QuadratureResult inner =
        integrate_panels(f, {0.0, split, params_.eta}, 1e-10, 0.0);
    QuadratureResult outer = integrate_panels(
        f, {params_.eta, params_.eta + 4.0 / xi, rho_max_}, 1e-10, 0.0);
    if (!inner.converged || !outer.converged)
        throw ConvergenceError("RadialWavefunction: normalization quadrature "
                               "did not reach 1e-10");
    double total = inner.value + outer.value;
    // Tail beyond rho_max: the integrand decays at least as fast as
    // e^{-r (rho-rho_max)} with r = 2 xi - (2 + 2/xi)/rho_max > 0, so the
    // remainder is below f(rho_max)/r.
    double rate = 2.0 * xi - (2.0 + 2.0 / xi) / rho_max_;
    if (rate <= 0.0)
        throw ConvergenceError("RadialWavefunction: tail bound unavailable");
    double tail = f(rho_max_) / rate;
    if (!(tail < 1e-12 * total))
        throw ConvergenceError(
            "RadialWavefunction: truncated tail fraction " +
            std::to_string(tail / total) + " exceeds 1e-12");
    c_ = 1.0 / std::sqrt(total);
}

double RadialWavefunction::interior_branch(double rho) const {
    if (!(rho > 0.0)) throw DomainError("interior_branch: rho must be > 0");
    double lambda = solution_.lambda_int;
    return c_ * specfun::spherical_bessel_j(solution_.qn.l, lambda * rho) / jl_eta_;
}

double RadialWavefunction::exterior_log_ratio(double rho, int* sign) const {
    double xi = solution_.xi;
    specfun::UEvaluation u = specfun::confluent_u(a_, b_, 2.0 * xi * rho);
    if (u.value == 0.0) {
        *sign = 0;
        return -HUGE_VAL;
    }
    *sign = sign_of(u.value) * sign_u_eta_;
    return solution_.qn.l * std::log(rho / params_.eta) -
           xi * (rho - params_.eta) + std::log(std::fabs(u.value)) +
           u.log_scale - ln_u_eta_;
}

double RadialWavefunction::exterior_branch(double rho) const {
    if (!(rho > 0.0)) throw DomainError("exterior_branch: rho must be > 0");
    int sign = 0;
    double ln = exterior_log_ratio(rho, &sign);
    return sign == 0 ? 0.0 : c_ * sign * std::exp(ln);
}

double RadialWavefunction::operator()(double rho) const {
    return rho <= params_.eta ? interior_branch(rho) : exterior_branch(rho);
}

int RadialWavefunction::count_nodes() const {
    // Scan each branch on its own side of eta. 600 points per side is far
    // denser than the nr <= 20 oscillations supported here.
    int changes = 0;
    int last = 0;
    auto feed = [&](double v) {
        int s = sign_of(v);
        if (s != 0) {
            if (last != 0 && s != last) ++changes;
            last = s;
        }
    };
    double eta = params_.eta;
    for (int i = 1; i <= 600; ++i) feed(interior_branch(eta * i / 600.0));
    for (int i = 1; i <= 600; ++i)
        feed(exterior_branch(eta + (rho_max_ - eta) * i / 600.0));
    return changes;
}

RadialWavefunction normalize(const EigenSolution& solution,
                             const ShellParams& params) {
    return RadialWavefunction(params, solution);
}

std::vector<std::pair<double, double>> distribution(
    const RadialWavefunction& wf, const std::vector<double>& rho_grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(rho_grid.size());
    double prev = 0.0;
    for (double rho : rho_grid) {
        if (!(rho > 0.0) || rho <= prev)
            throw DomainError("distribution: grid must be positive and strictly increasing");
        prev = rho;
        double p = wf(rho);
        out.emplace_back(rho, rho * rho * p * p);
    }
    return out;
}

double r2_expectation(const RadialWavefunction& wf) {
    auto f = [&wf](double rho) {
        double p = wf(rho);
        return rho * rho * rho * rho * p * p;
    };
    const ShellParams& p = wf.params();
    double xi = wf.solution().xi;
    double split = std::min(p.eta / 8.0, 1.0);
    QuadratureResult inner = integrate_panels(f, {0.0, split, p.eta}, 1e-10, 0.0);
    QuadratureResult outer = integrate_panels(
        f, {p.eta, p.eta + 4.0 / xi, wf.rho_max()}, 1e-10, 0.0);
    if (!inner.converged || !outer.converged)
        throw ConvergenceError("r2_expectation: quadrature did not converge");
    double total = inner.value + outer.value;
    double rate = 2.0 * xi - (4.0 + 2.0 / xi) / wf.rho_max();
    if (rate <= 0.0)
        throw ConvergenceError("r2_expectation: tail bound unavailable");
    double tail = f(wf.rho_max()) / rate;
    if (!(tail < 1e-10 * total))
        throw ConvergenceError("r2_expectation: truncated tail too large");
    return total;
}

ExcitationEnergy excitation_energy(const ShellParams& params) {
    LevelList g = find_levels(params, 0, 0);
    LevelList e = find_levels(params, 1, 0);
    if (g.levels.empty() || e.levels.empty())
        throw BracketError("excitation_energy: ground or first excited level "
                           "not found");
    ExcitationEnergy x;
    x.ground_xi = g.levels[0].xi;
    x.excited_xi = e.levels[0].xi;
    x.delta_e_ry = x.ground_xi * x.ground_xi - x.excited_xi * x.excited_xi;
    if (!(x.delta_e_ry > 0.0))
        throw ConvergenceError("excitation_energy: level ordering violated");
    return x;
}

double transition_frequency_thz(double delta_e_ry) {
    // omega = Delta E / hbar, with Delta E converted Ry -> eV; expressed in
    // units of 1e12 rad/s.
    return delta_e_ry * kRydbergEv / kHbarEvSec / 1e12;
}

}  // namespace nanoshell
