#include <doctest.h>

#include <cmath>

#include <nanoshell/errors.hpp>
#include <nanoshell/model.hpp>

using namespace nanoshell;

TEST_CASE("potential is a flat floor inside the shell and Coulomb outside") {
    const ShellParams p{50.0};
    CHECK(potential_value(p, 1.0) == doctest::Approx(-1.0 / 50.0));
    CHECK(potential_value(p, 49.999) == doctest::Approx(-1.0 / 50.0));
    CHECK(potential_value(p, 50.0) == doctest::Approx(-1.0 / 50.0));
    CHECK(potential_value(p, 80.0) == doctest::Approx(-1.0 / 80.0));
    // continuous at the shell
    CHECK(potential_value(p, 50.0 * (1 + 1e-12)) ==
          doctest::Approx(potential_value(p, 50.0 * (1 - 1e-12))).epsilon(1e-9));
}

TEST_CASE("potential rejects nonpositive arguments") {
    CHECK_THROWS_AS(potential_value(ShellParams{50.0}, 0.0), DomainError);
    CHECK_THROWS_AS(potential_value(ShellParams{50.0}, -1.0), DomainError);
    CHECK_THROWS_AS(potential_value(ShellParams{0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(potential_value(ShellParams{-3.0}, 1.0), DomainError);
}

TEST_CASE("bound window is (0, sqrt(2/eta))") {
    const EnergyWindow w = xi_window(ShellParams{50.0});
    CHECK(w.xi_min == 0.0);
    CHECK(w.xi_max == doctest::Approx(std::sqrt(2.0 / 50.0)).epsilon(1e-14));
    CHECK(w.contains(0.1));
    CHECK_FALSE(w.contains(0.0));
    CHECK_FALSE(w.contains(w.xi_max));
    CHECK_FALSE(w.contains(0.3));
    CHECK_THROWS_AS(xi_window(ShellParams{0.0}), DomainError);
}

TEST_CASE("energy conversions") {
    // xi = 1 is one Rydberg of binding, xi = 1/2 a quarter
    CHECK(energy_ry_from_xi(1.0) == -1.0);
    CHECK(energy_ry_from_xi(0.5) == -0.25);
    CHECK(energy_ea_from_xi(1.0) == -0.5);
    CHECK(energy_ea_from_xi(0.2) == doctest::Approx(-0.02).epsilon(1e-14));
    CHECK(kRydbergEv == doctest::Approx(kCoulombEnergyEv / 2.0));
}

TEST_CASE("radius in nm maps to eta through the Bohr radius") {
    CHECK(eta_from_radius_nm(10.6) == doctest::Approx(200.0).epsilon(1e-12));
    CHECK(radius_nm_from_eta(200.0) == doctest::Approx(10.6).epsilon(1e-12));
    const double r = 3.7;
    CHECK(radius_nm_from_eta(eta_from_radius_nm(r)) == doctest::Approx(r).epsilon(1e-14));
    CHECK_THROWS_AS(eta_from_radius_nm(0.0), DomainError);
    CHECK_THROWS_AS(eta_from_radius_nm(-2.0), DomainError);
}

TEST_CASE("charge-z problem rescales from the unit-charge solution") {
    // xi grows with z, the shell shrinks in scaled units
    CHECK(xi_for_charge(0.2, 3) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(eta_for_charge(60.0, 3) == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(xi_for_charge(0.2, 1) == 0.2);
    CHECK(eta_for_charge(60.0, 1) == 60.0);
    CHECK_THROWS_AS(xi_for_charge(0.2, 0), DomainError);
    CHECK_THROWS_AS(eta_for_charge(60.0, -1), DomainError);
}
