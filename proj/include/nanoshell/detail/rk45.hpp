#pragma once

#include <array>
#include <cmath>

namespace nanoshell::detail {

// Dormand-Prince 5(4) embedded pair for y' = f(x, y) with y in R^2, adaptive
// step control, either direction of integration. The radial equations and
// Kummer's equation are both linear and homogeneous, so when `log_scale` is
// non-null the state is renormalised whenever its magnitude leaves
// [1e-120, 1e120] and the factored log magnitude accumulates in *log_scale.

struct RkOptions {
    double rtol = 1e-12;
    double atol = 1e-300;  // pure relative control by default
    long max_steps = 4000000;
};

struct RkStats {
    bool ok = false;
    long steps = 0;      // accepted steps
    long rejected = 0;
};

using Vec2 = std::array<double, 2>;

// Observer is called after every accepted step as observer(x, y). Pass a
// no-capture lambda doing nothing when step-by-step output is not needed.
template <class Rhs, class Observer>
RkStats rk45_integrate(Rhs&& f, double& x, Vec2& y, double x_end,
                       const RkOptions& opt, double* log_scale,
                       Observer&& observer) {
    RkStats stats;
    const double dir = x_end > x ? 1.0 : -1.0;
    double span = std::fabs(x_end - x);
    if (span == 0.0) {
        stats.ok = true;
        return stats;
    }

    // Dormand-Prince coefficients.
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                     a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                     a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                     a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                     e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                     e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    double h = dir * span / 100.0;
    Vec2 k1 = f(x, y);
    bool have_k1 = true;

    while (dir * (x_end - x) > 0.0) {
        if (stats.steps + stats.rejected >= opt.max_steps) return stats;
        if (dir * (x + h - x_end) > 0.0) h = x_end - x;
        if (!have_k1) {
            k1 = f(x, y);
            have_k1 = true;
        }

        Vec2 yt;
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * a21 * k1[i];
        Vec2 k2 = f(x + h / 5.0, yt);
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        Vec2 k3 = f(x + 3.0 * h / 10.0, yt);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        Vec2 k4 = f(x + 4.0 * h / 5.0, yt);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        Vec2 k5 = f(x + 8.0 * h / 9.0, yt);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                a64 * k4[i] + a65 * k5[i]);
        Vec2 k6 = f(x + h, yt);
        Vec2 y5;
        for (int i = 0; i < 2; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                b5 * k5[i] + b6 * k6[i]);
        Vec2 k7 = f(x + h, y5);

        // Error against a mixed component/system scale: the 0.01 floor keeps
        // zero crossings of one component from stalling the step size.
        double ysys = std::max(std::max(std::fabs(y[0]), std::fabs(y[1])),
                               std::max(std::fabs(y5[0]), std::fabs(y5[1])));
        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
            double sc = opt.atol +
                        opt.rtol * (std::max(std::fabs(y[i]), std::fabs(y5[i])) +
                                    0.01 * ysys);
            double r = e / sc;
            err += r * r;
        }
        err = std::sqrt(0.5 * err);

        if (err <= 1.0) {
            x += h;
            y = y5;
            k1 = k7;  // FSAL
            ++stats.steps;
            if (log_scale) {
                double m = std::max(std::fabs(y[0]), std::fabs(y[1]));
                if (m > 1e120 || (m > 0.0 && m < 1e-120)) {
                    y[0] /= m;
                    y[1] /= m;
                    k1[0] /= m;
                    k1[1] /= m;
                    *log_scale += std::log(m);
                }
            }
            observer(x, y);
        } else {
            ++stats.rejected;
            have_k1 = true;  // k1 still valid at unchanged x
        }

        double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        fac = std::min(5.0, std::max(0.2, fac));
        h *= fac;
        double hmin = std::fabs(x) * 1e-15 + 1e-300;
        if (std::fabs(h) < hmin) h = dir * hmin * 4.0;
    }
    stats.ok = true;
    return stats;
}

template <class Rhs>
RkStats rk45_integrate(Rhs&& f, double& x, Vec2& y, double x_end,
                       const RkOptions& opt = {}, double* log_scale = nullptr) {
    return rk45_integrate(static_cast<Rhs&&>(f), x, y, x_end, opt, log_scale,
                          [](double, const Vec2&) {});
}

}  // namespace nanoshell::detail
