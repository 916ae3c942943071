#include <doctest.h>

#include <cmath>
#include <vector>

#include <nanoshell/exact.hpp>
#include <nanoshell/model.hpp>
#include <nanoshell/quadrature.hpp>
#include <nanoshell/wavefunction.hpp>

using namespace nanoshell;

namespace {

RadialWavefunction solve_state(double eta, int l, int nr) {
    const ShellParams p{eta};
    const LevelList list = find_levels(p, l, nr);
    REQUIRE(static_cast<int>(list.levels.size()) > nr);
    return normalize(list.levels.at(nr), p);
}

double norm_integral(const RadialWavefunction& wf, double lo, double hi) {
    const ShellParams& p = wf.params();
    const double xi = wf.solution().xi;
    const std::vector<double> bounds = {lo, std::min(p.eta / 8.0, 1.0), p.eta,
                                        p.eta + 4.0 / xi, hi};
    auto result = integrate_panels(
        [&](double rho) {
            const double phi = wf(rho);
            return rho * rho * phi * phi;
        },
        bounds, 1e-11, 1e-13);
    REQUIRE(result.converged);
    return result.value;
}

}  // namespace

TEST_CASE("constructor normalizes the radial density to one") {
    const RadialWavefunction wf = solve_state(50.0, 0, 0);
    CHECK(norm_integral(wf, 0.0, wf.rho_max()) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("both branches meet at the shell with value C") {
    const RadialWavefunction wf = solve_state(50.0, 1, 2);
    const double eta = 50.0;
    CHECK(wf.interior_branch(eta) == doctest::Approx(wf.norm_c()).epsilon(1e-12));
    CHECK(wf.exterior_branch(eta) == doctest::Approx(wf.norm_c()).epsilon(1e-12));
    CHECK(wf(eta) == doctest::Approx(wf.norm_c()).epsilon(1e-12));
}

TEST_CASE("slope is continuous across the shell") {
    const RadialWavefunction wf = solve_state(50.0, 0, 0);
    const double eta = 50.0, h = 1e-2;
    auto stencil = [&](auto&& f) {
        return (8.0 * (f(eta + h) - f(eta - h)) - (f(eta + 2 * h) - f(eta - 2 * h))) /
               (12.0 * h);
    };
    const double din = stencil([&](double r) { return wf.interior_branch(r); });
    const double dout = stencil([&](double r) { return wf.exterior_branch(r); });
    CHECK(din == doctest::Approx(dout).epsilon(1e-6));
}

TEST_CASE("normalization constants at the reference shells") {
    // frozen from converged runs; the re-quadrature above pins the scale
    CHECK(solve_state(50.0, 0, 0).norm_c() == doctest::Approx(2.393863e-3).epsilon(1e-5));
    CHECK(solve_state(100.0, 0, 0).norm_c() == doctest::Approx(7.418015e-4).epsilon(1e-5));
    CHECK(solve_state(150.0, 0, 0).norm_c() == doctest::Approx(3.695831e-4).epsilon(1e-5));
    CHECK(solve_state(200.0, 0, 0).norm_c() == doctest::Approx(2.245045e-4).epsilon(1e-5));
}

TEST_CASE("excited-state normalization constants at eta = 200") {
    const double expected[4] = {2.2450e-4, 3.9523e-4, 4.2548e-4, 1.5291e-4};
    for (int nr = 0; nr < 4; ++nr)
        CHECK(solve_state(200.0, 0, nr).norm_c() ==
              doctest::Approx(expected[nr]).epsilon(1e-4));
}

TEST_CASE("exterior tail has decayed to dust at thirty e-folding lengths") {
    const RadialWavefunction wf = solve_state(200.0, 0, 0);
    const double xi = wf.solution().xi;
    CHECK(std::fabs(wf(200.0 + 30.0 / xi)) / wf.norm_c() < 1e-8);
}

TEST_CASE("norm is insensitive to the outer cutoff") {
    // the density left beyond rho_max would not move C at 1e-10
    const RadialWavefunction wf = solve_state(50.0, 0, 0);
    auto tail = integrate(
        [&](double rho) {
            const double phi = wf.exterior_branch(rho);
            return rho * rho * phi * phi;
        },
        wf.rho_max(), 2.0 * wf.rho_max(), 1e-8, 1e-14);
    CHECK(tail.converged);
    CHECK(std::fabs(tail.value) < 1e-10);
}

TEST_CASE("node count equals the radial quantum number") {
    for (int nr = 0; nr < 4; ++nr) CHECK(solve_state(200.0, 0, nr).count_nodes() == nr);
    CHECK(solve_state(50.0, 2, 3).count_nodes() == 3);
}

TEST_CASE("distribution is nonnegative and integrates to one on the default grid") {
    const RadialWavefunction wf = solve_state(200.0, 0, 3);
    const int n = 2000;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = 1e-3 + (wf.rho_max() - 1e-3) * static_cast<double>(i) / (n - 1);
    const auto d = distribution(wf, grid);
    REQUIRE(d.size() == grid.size());
    double trapezoid = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        CHECK(d[i].second >= 0.0);
        trapezoid += 0.5 * (d[i].second + d[i + 1].second) *
                     (d[i + 1].first - d[i].first);
    }
    CHECK(trapezoid == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("ground-state spread grows quadratically with the shell") {
    // <r^2> in Bohr radii squared, five-figure anchors
    CHECK(r2_expectation(solve_state(50.0, 0, 0)) ==
          doctest::Approx(1292.3).epsilon(5e-3));
    CHECK(r2_expectation(solve_state(200.0, 0, 0)) ==
          doctest::Approx(16373.5).epsilon(5e-3));
}

TEST_CASE("excitation gap against the level difference") {
    const ShellParams p{50.0};
    const ExcitationEnergy gap = excitation_energy(p);
    CHECK(gap.ground_xi == doctest::Approx(0.1942864854).epsilon(1e-8));
    CHECK(gap.excited_xi == doctest::Approx(0.1883213061).epsilon(1e-8));
    CHECK(gap.delta_e_ry ==
          doctest::Approx(gap.ground_xi * gap.ground_xi -
                          gap.excited_xi * gap.excited_xi)
              .epsilon(1e-12));
    CHECK(gap.delta_e_ry == doctest::Approx(2.282324e-3).epsilon(1e-5));
    // the excited level is still a bound state below the ground in binding
    CHECK(gap.excited_xi < gap.ground_xi);
}

TEST_CASE("transition frequency lands on the terahertz scale and falls with size") {
    const double gap50 = excitation_energy(ShellParams{50.0}).delta_e_ry;
    const double gap100 = excitation_energy(ShellParams{100.0}).delta_e_ry;
    const double f50 = transition_frequency_thz(gap50);
    const double f100 = transition_frequency_thz(gap100);
    CHECK(f50 == doctest::Approx(47.1748).epsilon(1e-4));
    // angular frequency in units of 1e12 rad/s: Delta E / hbar
    CHECK(f100 ==
          doctest::Approx(gap100 * kRydbergEv / kHbarEvSec * 1e-12).epsilon(1e-12));
    CHECK(f50 > f100);
    CHECK(f100 > 0.0);
}
