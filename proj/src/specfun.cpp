#include "nanoshell/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nanoshell/detail/rk45.hpp"

namespace nanoshell::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// |j_l| this far (relative) below the local Bessel magnitude marks a zero.
constexpr double kBesselPoleThreshold = 1e-7;

bool near_nonpositive_integer(double x, double tol) {
    if (x > 0.5) return false;
    return std::fabs(x - std::nearbyint(x)) < tol;
}

// Lanczos approximation (g = 7, 9 terms), |error| < 1e-13 for x > 0.5.
double ln_gamma_positive(double x) {
    static const double c[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    double sum = c[0];
    for (int i = 1; i < 9; ++i) sum += c[i] / (x - 1.0 + i);
    double t = x + 6.5;
    return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t + std::log(sum);
}

double j0_closed(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double j1_closed(double x) {
    if (x < 0.5) {
        // Series form: the closed form loses digits to cancellation here.
        double x2 = x * x;
        return x / 3.0 *
               (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0 * (1.0 - x2 / 88.0))));
    }
    return std::sin(x) / (x * x) - std::cos(x) / x;
}

}  // namespace

LnGamma ln_gamma(double x) {
    if (!std::isfinite(x)) throw DomainError("ln_gamma: non-finite argument");
    if (near_nonpositive_integer(x, 1e-13))
        throw DomainError("ln_gamma: pole at nonpositive integer " + std::to_string(x));
    if (x >= 0.5) return {ln_gamma_positive(x), 1};
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x). Compute sin(pi x)
    // from the reduced argument to keep accuracy at large negative x.
    double r = x - std::nearbyint(x);  // in [-0.5, 0.5]
    double sin_pi = std::sin(kPi * r);
    if (static_cast<long long>(std::nearbyint(x)) % 2 != 0) sin_pi = -sin_pi;
    double value = std::log(kPi / std::fabs(sin_pi)) - ln_gamma_positive(1.0 - x);
    return {value, sin_pi > 0.0 ? 1 : -1};
}

BesselPair spherical_bessel_pair(int l, double x) {
    if (l < 0) throw DomainError("spherical_bessel: l must be >= 0");
    if (x < 0.0) throw DomainError("spherical_bessel: x must be >= 0");
    if (x == 0.0) return {l == 0 ? 1.0 : 0.0, 0.0};
    if (l == 0) return {j0_closed(x), j1_closed(x)};

    // Miller's downward recurrence j_{n-1} = (2n+1)/x j_n - j_{n+1}, with the
    // magnitude fixed by sum_n (2n+1) j_n^2 = 1 and the sign fixed against
    // whichever of j_0, j_1 is larger.
    int ltop = std::max(l, static_cast<int>(std::ceil(x))) + 40 +
               static_cast<int>(4.0 * std::cbrt(std::max(x, 1.0)));
    double jp = 0.0;          // j_{n+1}
    double jc = 1e-30;        // j_n (arbitrary seed)
    double sum = (2.0 * ltop + 1.0) * jc * jc;
    double jl_un = (l == ltop) ? jc : 0.0;
    double jlp1_un = (l + 1 == ltop) ? jc : 0.0;
    for (int n = ltop; n >= 1; --n) {
        double jm = (2.0 * n + 1.0) / x * jc - jp;
        jp = jc;
        jc = jm;
        int m = n - 1;
        sum += (2.0 * m + 1.0) * jc * jc;
        if (m == l) jl_un = jc;
        if (m == l + 1) jlp1_un = jc;
        if (std::fabs(jc) > 1e250) {
            const double s = 1e-250;
            jp *= s;
            jc *= s;
            sum *= s * s;
            jl_un *= s;
            jlp1_un *= s;
        }
    }
    double scale = 1.0 / std::sqrt(sum);
    // jc now holds the unnormalised j_0 and jp holds j_1.
    double sign;
    if (std::fabs(jc) >= std::fabs(jp))
        sign = (j0_closed(x) < 0.0) == (jc < 0.0) ? 1.0 : -1.0;
    else
        sign = (j1_closed(x) < 0.0) == (jp < 0.0) ? 1.0 : -1.0;
    return {sign * scale * jl_un, sign * scale * jlp1_un};
}

double spherical_bessel_j(int l, double x) {
    return spherical_bessel_pair(l, x).jl;
}

BesselRatio spherical_bessel_ratio(int l, double x) {
    BesselPair p = spherical_bessel_pair(l, x);
    double mag = std::max(std::fabs(p.jl), std::fabs(p.jlp1));
    BesselRatio r;
    r.pole = mag == 0.0 || std::fabs(p.jl) <= kBesselPoleThreshold * mag;
    r.value = p.jlp1 / p.jl;
    return r;
}

double spherical_hankel1_imag(int l, double x) {
    if (l < 0) throw DomainError("spherical_hankel1_imag: l must be >= 0");
    if (!(x > 0.0)) throw DomainError("spherical_hankel1_imag: x must be > 0");
    // Scaled k_hat_l = (2/pi) e^x k_l. The recurrence runs upward because k_l
    // grows with l. Log-derivative: k_l' = (l/x) k_l - k_{l+1}.
    double km = 1.0 / x;                  // k_hat_0
    double kc = 1.0 / x + 1.0 / (x * x);  // k_hat_1
    if (l == 0) return -1.0 - 1.0 / x;
    for (int n = 1; n < l; ++n) {
        double kn = km + (2.0 * n + 1.0) / x * kc;
        km = kc;
        kc = kn;
    }
    double kp = km + (2.0 * l + 1.0) / x * kc;  // k_hat_{l+1}
    return static_cast<double>(l) / x - kp / kc;
}

double laguerre(int n, double alpha, double x) {
    if (n < 0) throw DomainError("laguerre: n must be >= 0");
    if (n == 0) return 1.0;
    double lm = 1.0;
    double lc = alpha + 1.0 - x;
    for (int k = 1; k < n; ++k) {
        double ln = ((2.0 * k + 1.0 + alpha - x) * lc - (k + alpha) * lm) / (k + 1.0);
        lm = lc;
        lc = ln;
    }
    return lc;
}

namespace {

// Truncated Poincare series sum_k (a)_k (a-b+1)_k / (k! (-x)^k), stopped at
// the smallest term. Returns the sum; *achieved is the size of that term
// relative to the sum (the optimal-truncation error estimate).
double u_asymptotic_sum(double a, double b, double x, double* achieved) {
    double term = 1.0, sum = 1.0;
    double best = std::numeric_limits<double>::max();
    double sum_at_best = 1.0;
    bool past_min = false;
    for (int k = 1; k <= 400; ++k) {
        term *= (a + k - 1.0) * (a - b + k) / (-x * k);
        if (term == 0.0) {  // terminating (polynomial) case
            *achieved = 0.0;
            return sum;
        }
        double mag = std::fabs(term);
        if (mag < best) {
            sum += term;
            best = mag;
            sum_at_best = sum;
            if (mag < 1e-17 * std::fabs(sum)) {
                *achieved = mag / std::fabs(sum);
                return sum;
            }
        } else {
            past_min = true;
            break;
        }
    }
    (void)past_min;
    *achieved = best / std::max(std::fabs(sum_at_best), 1e-300);
    return sum_at_best;
}

}  // namespace

UDerivativePair confluent_u_with_derivative(double a, double b, double x) {
    if (!(x > 0.0)) throw DomainError("confluent_u: x must be > 0");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw DomainError("confluent_u: non-finite parameters");
    if (std::fabs(a) > 40.0 || std::fabs(b) > 40.0)
        throw DomainError("confluent_u: |a|, |b| must be <= 40");

    // Seed far out with the x^{-a} asymptotic series, where the recessive
    // solution is cleanly separated, then integrate Kummer's equation
    //   x U'' + (b - x) U' - a U = 0
    // inward. Both the e^x solution and the regular-at-0 solution shrink
    // relative to U in that direction. dU/dx = -a U(a+1, b+1, x) seeds the
    // derivative without cancellation.
    double x_start = std::max(2.0 * x, 50.0 + 10.0 * std::fabs(a));
    for (int attempt = 0;; ++attempt) {
        double err_u = 0.0, err_du = 0.0;
        double s_u = u_asymptotic_sum(a, b, x_start, &err_u);
        double s_du = u_asymptotic_sum(a + 1.0, b + 1.0, x_start, &err_du);
        if (std::max(err_u, err_du) > 1e-12) {
            if (attempt < 4) {
                x_start *= 1.6;
                continue;
            }
            throw ConvergenceError(
                "confluent_u: asymptotic seed series stalled at relative term " +
                std::to_string(std::max(err_u, err_du)) + " (a=" + std::to_string(a) +
                ", b=" + std::to_string(b) + ", x_start=" + std::to_string(x_start) + ")");
        }

        double log_scale = -a * std::log(x_start);
        detail::Vec2 y{s_u, -a * s_du / x_start};
        double t = x_start;
        auto rhs = [a, b](double xx, const detail::Vec2& v) -> detail::Vec2 {
            return {v[1], ((xx - b) * v[1] + a * v[0]) / xx};
        };
        detail::RkOptions opt;
        opt.rtol = 2e-13;
        opt.atol = 1e-300;
        detail::RkStats st = detail::rk45_integrate(rhs, t, y, x, opt, &log_scale);
        if (!st.ok)
            throw ConvergenceError(
                "confluent_u: inward Kummer integration exceeded the step budget (a=" +
                std::to_string(a) + ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
        return {y[0], y[1], log_scale};
    }
}

UEvaluation confluent_u(double a, double b, double x) {
    UDerivativePair p = confluent_u_with_derivative(a, b, x);
    return {p.u, p.log_scale, true};
}

double confluent_u_ratio(double a, int l, double x) {
    if (l < 0) throw DomainError("confluent_u_ratio: l must be >= 0");
    UDerivativePair p = confluent_u_with_derivative(a, 2.0 * l + 2.0, x);
    // U(a, b+1, x) = U(a, b, x) - U'(a, b, x); the exp(log_scale) cancels.
    return (p.u - p.du) / p.u;
}

}  // namespace nanoshell::specfun
