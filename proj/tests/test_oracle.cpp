#include <doctest.h>

#include <cmath>
#include <vector>

#include <nanoshell/errors.hpp>
#include <nanoshell/exact.hpp>
#include <nanoshell/model.hpp>
#include <nanoshell/oracle.hpp>
#include <nanoshell/wavefunction.hpp>

using namespace nanoshell;

TEST_CASE("pure coulomb tail: the known ground-state branch") {
    // u = rho e^{-rho} solves the exterior equation at xi = 1, l = 0, so the
    // inward integration must land on u'/u = 1/rho - 1 at any radius.
    const BranchState b = integrate_exterior(1.0, 2.0, 42.0, 0, 1.0);
    CHECK(b.du / b.u == doctest::Approx(1.0 / 2.0 - 1.0).epsilon(1e-10));
    CHECK(b.sign_changes == 0);
}

TEST_CASE("interior branch log-derivative equals the flat-well closed form") {
    const ShellParams p{50.0};
    const int l = 0;
    const double xi = 0.15;
    // inside the shell u ~ sin(lambda rho) for l = 0
    const double lambda = std::sqrt(2.0 / 50.0 - xi * xi);
    const double expected = lambda / std::tan(lambda * 50.0);
    CHECK(expected == doctest::Approx(0.384715295714).epsilon(1e-9));
    CHECK(interior_log_derivative(p, l, xi) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("exterior seed position does not move the log-derivative") {
    const double xi = 0.15;
    const BranchState near = integrate_exterior(1.0, 50.0, 50.0 + 40.0 / xi, 0, xi);
    const BranchState far = integrate_exterior(1.0, 50.0, 50.0 + 50.0 / xi, 0, xi);
    CHECK(near.du / near.u == doctest::Approx(far.du / far.u).epsilon(1e-10));
}

TEST_CASE("shooting reproduces the dispersion-relation ground state") {
    const ShellParams p{50.0};
    const ShootResult r = shoot(p, 0, 0.19, 0.198);
    CHECK(r.xi == doctest::Approx(0.1942864854).epsilon(1e-9));
    CHECK(r.log_derivative_mismatch < 1e-9);
    CHECK(r.node_count == 0);
    CHECK(r.grid.rho_match == doctest::Approx(50.0));
    // one grid serves the whole bracket: sized for its slowest-decaying edge
    CHECK(r.grid.rho_max == doctest::Approx(50.0 + 40.0 / 0.19).epsilon(1e-9));
    CHECK(r.grid.rho_max >= 50.0 + 40.0 / r.xi);
    CHECK(r.grid.rho0 < 1e-3);
    CHECK(r.grid.interior_steps > 0);
    CHECK(r.grid.exterior_steps > 0);
}

TEST_CASE("a bracket without a sign change is refused") {
    const ShellParams p{50.0};
    // above the topmost level, below the window edge: no eigenvalue here
    CHECK_THROWS_AS(shoot(p, 0, 0.1990, 0.1995), BracketError);
}

TEST_CASE("guess-centered search refines a nearby estimate") {
    // the bracket grows to at most 0.2% around the guess, so the guess must
    // already be close (a five-digit table entry is)
    const ShellParams p{50.0};
    const ShootResult r0 = find_level_near(p, 0, 0.19430);
    CHECK(r0.xi == doctest::Approx(0.1942864854).epsilon(1e-8));
    CHECK(r0.node_count == 0);
    const ShootResult r1 = find_level_near(p, 0, 0.17772);
    CHECK(r1.xi == doctest::Approx(0.1777100792).epsilon(1e-8));
    CHECK(r1.node_count == 1);
    CHECK_THROWS_AS(find_level_near(p, 0, 0.186), BracketError);
    CHECK_THROWS_AS(find_level_near(p, 0, 0.5), DomainError);
}

TEST_CASE("scan route lists the same levels as the dispersion relation") {
    const ShellParams p{50.0};
    const LevelList ode = oracle_find_levels(p, 0, 2);
    const LevelList ref = find_levels(p, 0, 2);
    REQUIRE(ode.complete);
    REQUIRE(ode.levels.size() == 3);
    for (int nr = 0; nr <= 2; ++nr) {
        CHECK(std::fabs(ode.levels[nr].xi - ref.levels[nr].xi) < 1e-9);
        CHECK(ode.levels[nr].residual < 1e-9);  // log-derivative mismatch
        CHECK(ode.levels[nr].qn.nr == nr);
    }
}

TEST_CASE("hydrogen regime: shooting hits the coulomb levels") {
    const ShellParams p{1e-3};
    const ShootResult g = find_level_near(p, 0, 0.999);
    CHECK(std::fabs(g.xi - 1.0) < 1e-5);
    CHECK(g.node_count == 0);
    const ShootResult e = find_level_near(p, 0, 0.4995);
    CHECK(std::fabs(e.xi - 0.5) < 1e-5);
    CHECK(e.node_count == 1);
}

TEST_CASE("deep states of a large shell keep a healthy far seed") {
    // highest node count at the largest reference shell: the decaying-tail
    // series at rho_max has one early growing term before it collapses, and
    // must still be summed to its smallest term rather than rejected
    const ShellParams p{200.0};
    const double ref = find_levels(p, 0, 3).levels.at(3).xi;
    const ShootResult r = find_level_near(p, 0, ref);
    CHECK(std::fabs(r.xi - ref) < 1e-6);
    CHECK(r.node_count == 3);
    CHECK(r.log_derivative_mismatch < 1e-9);
}

TEST_CASE("sampled oracle wavefunction matches the closed-form eigenfunction") {
    const ShellParams p{50.0};
    const LevelList list = find_levels(p, 0, 1);
    const EigenSolution& s = list.levels.at(1);
    const RadialWavefunction wf = normalize(s, p);
    const std::vector<double> radii = {10.0, 30.0, 50.0, 65.0, 80.0};
    const std::vector<double> phi = oracle_wavefunction(p, 0, s.xi, radii);
    REQUIRE(phi.size() == radii.size());
    // oracle output is normalized to phi(eta) = 1
    CHECK(phi[2] == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t i = 0; i < radii.size(); ++i)
        CHECK(phi[i] == doctest::Approx(wf(radii[i]) / wf.norm_c()).epsilon(1e-8));
}

TEST_CASE("well shooting agrees with the well dispersion root") {
    const ShootResult r = well_shoot(1.0, 2.0, 0, 0.86, 0.88);
    CHECK(r.xi == doctest::Approx(0.868563595505).epsilon(1e-8));
    CHECK(r.node_count == 0);
    CHECK(r.log_derivative_mismatch < 1e-8);
}
