#include <doctest.h>

#include <cmath>
#include <vector>

#include <nanoshell/errors.hpp>
#include <nanoshell/specfun.hpp>

using namespace nanoshell;
using namespace nanoshell::specfun;

namespace {

double u_value(double a, double b, double x) {
    const UEvaluation e = confluent_u(a, b, x);
    return e.value * std::exp(e.log_scale);
}

// explicit sum for L_n^(alpha), independent of the recurrence in the library
double laguerre_sum(int n, double alpha, double x) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double c = std::exp(std::lgamma(n + alpha + 1.0) -
                                  std::lgamma(alpha + k + 1.0) -
                                  std::lgamma(n - k + 1.0) - std::lgamma(k + 1.0));
        s += ((k % 2) ? -1.0 : 1.0) * c * std::pow(x, k);
    }
    return s;
}

}  // namespace

TEST_CASE("log-gamma at factorial and half-integer anchors") {
    CHECK(ln_gamma(1.0).value == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ln_gamma(2.0).value == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ln_gamma(5.0).value == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(ln_gamma(0.5).value == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
    CHECK(ln_gamma(5.0).sign == 1);
}

TEST_CASE("log-gamma sign flips between negative integers") {
    // Gamma(-0.5) = -2 sqrt(pi), Gamma(-1.5) = +4 sqrt(pi)/3
    const LnGamma a = ln_gamma(-0.5);
    CHECK(a.sign == -1);
    CHECK(a.value == doctest::Approx(std::log(2.0 * std::sqrt(M_PI))).epsilon(1e-13));
    const LnGamma b = ln_gamma(-1.5);
    CHECK(b.sign == 1);
    CHECK(b.value == doctest::Approx(std::log(4.0 * std::sqrt(M_PI) / 3.0)).epsilon(1e-13));
}

TEST_CASE("log-gamma agrees with the standard library on the positive axis") {
    for (double x = 0.05; x < 20.0; x += 0.37) {
        const LnGamma g = ln_gamma(x);
        CHECK(g.sign == 1);
        CHECK(g.value ==
              doctest::Approx(std::lgamma(x)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("log-gamma poles at nonpositive integers throw") {
    CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
    CHECK_THROWS_AS(ln_gamma(-1.0), DomainError);
    CHECK_THROWS_AS(ln_gamma(-7.0), DomainError);
}

TEST_CASE("spherical bessel closed forms for l = 0, 1, 2") {
    for (double x : {0.3, 1.7, 6.1, 30.0}) {
        const double j0 = std::sin(x) / x;
        const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
        const double j2 =
            (3.0 / (x * x * x) - 1.0 / x) * std::sin(x) - 3.0 * std::cos(x) / (x * x);
        CHECK(spherical_bessel_j(0, x) == doctest::Approx(j0).epsilon(1e-12));
        CHECK(spherical_bessel_j(1, x) == doctest::Approx(j1).epsilon(1e-12));
        CHECK(spherical_bessel_j(2, x) == doctest::Approx(j2).epsilon(1e-12));
    }
}

TEST_CASE("spherical bessel at the origin") {
    CHECK(spherical_bessel_j(0, 0.0) == 1.0);
    CHECK(spherical_bessel_j(1, 0.0) == 0.0);
    CHECK(spherical_bessel_j(5, 0.0) == 0.0);
}

TEST_CASE("downward recurrence holds small high-order values") {
    // leading term x^l/(2l+1)!! with relative correction x^2/(2(2l+3))
    const double lead = 7.273091945557428e-21;
    CHECK(spherical_bessel_j(10, 0.1) == doctest::Approx(lead).epsilon(5e-4));
    CHECK(spherical_bessel_j(10, 0.1) > 0.0);
}

TEST_CASE("three-term recurrence residual stays at rounding level") {
    for (int l : {1, 2, 4, 8}) {
        for (double x : {0.5, 3.7, 12.3}) {
            const double lhs =
                spherical_bessel_j(l - 1, x) + spherical_bessel_j(l + 1, x);
            const double rhs = (2.0 * l + 1.0) / x * spherical_bessel_j(l, x);
            const double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-30});
            CHECK(std::fabs(lhs - rhs) / scale < 1e-11);
        }
    }
}

TEST_CASE("pair evaluation matches single evaluations") {
    for (int l : {0, 1, 3}) {
        for (double x : {0.9, 5.2, 17.0}) {
            const BesselPair p = spherical_bessel_pair(l, x);
            CHECK(p.jl == doctest::Approx(spherical_bessel_j(l, x)).epsilon(1e-14));
            CHECK(p.jlp1 == doctest::Approx(spherical_bessel_j(l + 1, x)).epsilon(1e-14));
        }
    }
}

TEST_CASE("bessel ratio flags zeros of the denominator") {
    const BesselRatio fine = spherical_bessel_ratio(0, 1.0);
    CHECK_FALSE(fine.pole);
    CHECK(fine.value ==
          doctest::Approx(spherical_bessel_j(1, 1.0) / spherical_bessel_j(0, 1.0))
              .epsilon(1e-12));

    // j_0 vanishes at pi, j_1 at the first root of tan x = x
    CHECK(spherical_bessel_ratio(0, M_PI).pole);
    CHECK(spherical_bessel_ratio(1, 4.493409457909064).pole);
    CHECK_FALSE(spherical_bessel_ratio(1, M_PI).pole);
}

TEST_CASE("decaying exterior log-derivative closed forms") {
    for (double x : {0.7, 2.5, 9.0}) {
        // l=0: d/dx ln(e^-x / x)
        CHECK(spherical_hankel1_imag(0, x) ==
              doctest::Approx(-1.0 - 1.0 / x).epsilon(1e-12));
        // l=1: d/dx ln(e^-x (1/x + 1/x^2))
        CHECK(spherical_hankel1_imag(1, x) ==
              doctest::Approx(-(x * x + 2.0 * x + 2.0) / (x * (x + 1.0)))
                  .epsilon(1e-12));
        // l=2: e^-x (x^2 + 3x + 3)/x^3 = (e^-x / x)(1 + 3/x + 3/x^2)
        const double p = 1.0 + 3.0 / x + 3.0 / (x * x);
        const double dp = -3.0 / (x * x) - 6.0 / (x * x * x);
        CHECK(spherical_hankel1_imag(2, x) ==
              doctest::Approx(-1.0 - 1.0 / x + dp / p).epsilon(1e-12));
    }
}

TEST_CASE("laguerre low orders in closed form") {
    const double alpha = 1.3, x = 2.7;
    CHECK(laguerre(0, alpha, x) == 1.0);
    CHECK(laguerre(1, alpha, x) == doctest::Approx(1.0 + alpha - x).epsilon(1e-14));
    CHECK(laguerre(2, alpha, x) ==
          doctest::Approx(0.5 * x * x - (alpha + 2.0) * x +
                          0.5 * (alpha + 1.0) * (alpha + 2.0))
              .epsilon(1e-13));
}

TEST_CASE("laguerre recurrence matches the explicit sum") {
    CHECK(laguerre(5, 1.3, 2.7) == doctest::Approx(laguerre_sum(5, 1.3, 2.7)).epsilon(1e-10));
    CHECK(laguerre(9, 1.0, 20.0) == doctest::Approx(laguerre_sum(9, 1.0, 20.0)).epsilon(1e-9));
    CHECK(laguerre(9, 1.0, 20.0) == doctest::Approx(-523.1569664946).epsilon(1e-9));
    CHECK(laguerre(7, 0.0, 0.9) == doctest::Approx(laguerre_sum(7, 0.0, 0.9)).epsilon(1e-10));
}

TEST_CASE("confluent U with a = 0 is identically one") {
    CHECK(u_value(0.0, 2.0, 5.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u_value(0.0, 7.0, 0.3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("confluent U at negative integer a reduces to a laguerre polynomial") {
    // U(-n, b, x) = (-1)^n n! L_n^(b-1)(x)
    CHECK(u_value(-1.0, 3.0, 4.0) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(u_value(-1.0, 2.0, 4.0) == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(u_value(-2.0, 2.0, 1.1) == doctest::Approx(0.61).epsilon(1e-10));
    CHECK(u_value(-9.0, 2.0, 20.0) ==
          doctest::Approx(-362880.0 * laguerre(9, 1.0, 20.0)).epsilon(1e-9));
}

TEST_CASE("confluent U small-x leading behavior for b = 2") {
    // U(a, 2, x) ~ 1/(Gamma(a) x), relative correction O(x ln x)
    const double a = 0.7, x = 1e-4;
    const double lead = 1.0 / (std::exp(std::lgamma(a)) * x);
    CHECK(u_value(a, 2.0, x) == doctest::Approx(lead).epsilon(5e-3));
}

TEST_CASE("confluent U large-x asymptotic expansion") {
    const double a = 0.3, b = 2.0;
    for (double x : {80.0, 700.0}) {
        const double asym =
            std::pow(x, -a) *
            (1.0 - a * (a - b + 1.0) / x +
             0.5 * a * (a + 1.0) * (a - b + 1.0) * (a - b + 2.0) / (x * x));
        CHECK(u_value(a, b, x) == doctest::Approx(asym).epsilon(1e-6));
    }
}

TEST_CASE("confluent U contiguous relation in a") {
    // U(a-1,b,x) + (b-2a-x) U(a,b,x) + a(a-b+1) U(a+1,b,x) = 0
    struct Point {
        double a, b, x;
    };
    for (const Point& q : {Point{-4.3, 3.0, 9.0}, Point{-9.5, 2.0, 20.0},
                           Point{-0.37, 5.0, 33.0}, Point{2.2, 4.0, 12.0}}) {
        const double um = u_value(q.a - 1.0, q.b, q.x);
        const double u0 = u_value(q.a, q.b, q.x);
        const double up = u_value(q.a + 1.0, q.b, q.x);
        const double t1 = um;
        const double t2 = (q.b - 2.0 * q.a - q.x) * u0;
        const double t3 = q.a * (q.a - q.b + 1.0) * up;
        const double scale =
            std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3), 1e-300});
        CHECK(std::fabs(t1 + t2 + t3) / scale < 1e-9);
    }
}

TEST_CASE("confluent U derivative is consistent with a centered difference") {
    const double a = 0.6, b = 4.0, x = 9.0;
    const UDerivativePair d = confluent_u_with_derivative(a, b, x);
    const double h = 1e-4 * x;
    const double fd = (u_value(a, b, x + h) - u_value(a, b, x - h)) / (2.0 * h);
    CHECK(d.du * std::exp(d.log_scale) == doctest::Approx(fd).epsilon(1e-6));
    CHECK(d.u * std::exp(d.log_scale) == doctest::Approx(u_value(a, b, x)).epsilon(1e-11));
}

TEST_CASE("confluent U matches the decaying well solution") {
    // U(l+1, 2l+2, x) = x^(-l-1) sum_m (l+m)!/(m!(l-m)!) x^(-m): the same
    // function that terminates the flat-well exterior.
    for (int l = 0; l <= 3; ++l) {
        for (double x : {4.0, 15.0, 60.0}) {
            double s = 0.0, mfac = 1.0, lm = 1.0;
            for (int m = 0; m <= l; ++m) {
                if (m > 0) {
                    mfac *= m;
                    lm *= (l + m) * (l - m + 1);
                }
                s += lm / mfac * std::pow(x, -m);
            }
            const double expected = std::pow(x, -l - 1.0) * s;
            CHECK(u_value(l + 1.0, 2.0 * l + 2.0, x) ==
                  doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("confluent U ratio cancels the shared scale") {
    CHECK(confluent_u_ratio(-1.0, 0, 4.0) == doctest::Approx(0.5).epsilon(1e-10));
    const double a = 0.4, x = 7.0;
    const int l = 1;
    const UEvaluation hi = confluent_u(a, 2.0 * l + 3.0, x);
    const UEvaluation lo = confluent_u(a, 2.0 * l + 2.0, x);
    const double expected =
        hi.value / lo.value * std::exp(hi.log_scale - lo.log_scale);
    CHECK(confluent_u_ratio(a, l, x) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("confluent U rejects nonpositive arguments") {
    CHECK_THROWS_AS(confluent_u(0.5, 2.0, 0.0), DomainError);
    CHECK_THROWS_AS(confluent_u(0.5, 2.0, -1.0), DomainError);
    CHECK_THROWS_AS(confluent_u_with_derivative(0.5, 2.0, -1.0), DomainError);
}
