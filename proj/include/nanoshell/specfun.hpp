#pragma once

#include "nanoshell/errors.hpp"

namespace nanoshell::specfun {

/// ln|Gamma(x)| and the sign of Gamma(x). Nonpositive integers are poles and
/// throw DomainError.
struct LnGamma {
    double value = 0.0;
    int sign = 1;
};
LnGamma ln_gamma(double x);

/// Regular spherical Bessel function j_l(x), x >= 0.
double spherical_bessel_j(int l, double x);

/// j_l and j_{l+1} from one downward-recurrence pass.
struct BesselPair {
    double jl = 0.0;
    double jlp1 = 0.0;
};
BesselPair spherical_bessel_pair(int l, double x);

/// j_{l+1}(x) / j_l(x). `pole` is set whenever x sits close enough to a zero
/// of j_l that the ratio's sign cannot be trusted; the value is still the
/// computed quotient.
struct BesselRatio {
    double value = 0.0;
    bool pole = false;
};
BesselRatio spherical_bessel_ratio(int l, double x);

/// Real logarithmic derivative of the decaying exterior solution
/// h_l^(1)(i x): at imaginary argument the outgoing spherical Hankel function
/// reduces to the modified spherical Bessel function k_l, and
/// d/dx ln k_l(x) = l/x - k_{l+1}(x)/k_l(x) is real.
double spherical_hankel1_imag(int l, double x);

/// Generalized Laguerre polynomial L_n^(alpha)(x) by three-term recurrence.
double laguerre(int n, double alpha, double x);

/// Confluent hypergeometric function of the second kind, factored as
/// U(a,b,x) = value * exp(log_scale). `ok` reports that the seed series and
/// the inward integration both met their accuracy targets; failures throw
/// rather than return garbage, so returned evaluations always have ok true.
struct UEvaluation {
    double value = 0.0;
    double log_scale = 0.0;
    bool ok = false;
};
UEvaluation confluent_u(double a, double b, double x);

/// U and dU/dx sharing one log_scale, from a single inward integration.
struct UDerivativePair {
    double u = 0.0;
    double du = 0.0;
    double log_scale = 0.0;
};
UDerivativePair confluent_u_with_derivative(double a, double b, double x);

/// U(a, 2l+3, x) / U(a, 2l+2, x); the scale factors cancel.
double confluent_u_ratio(double a, int l, double x);

}  // namespace nanoshell::specfun
