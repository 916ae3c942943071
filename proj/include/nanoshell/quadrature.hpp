#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace nanoshell {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;  // estimated
    bool converged = false;
    int evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss, nodes/weights on [-1, 1].
inline constexpr double kK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kK15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kG7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
void gk15(F&& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double fc = f(c);
    double gauss = kG7Weights[3] * fc;
    double kron = kK15Weights[7] * fc;
    for (int i = 0; i < 7; ++i) {
        double x = hw * kK15Nodes[i];
        double fsum = f(c - x) + f(c + x);
        kron += kK15Weights[i] * fsum;
        if (i % 2 == 1) gauss += kG7Weights[i / 2] * fsum;
    }
    value = kron * hw;
    error = std::fabs((kron - gauss) * hw);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration over the panels defined by consecutive
/// entries of `bounds`. Panels are split worst-error-first until the summed
/// error estimate meets max(abs_tol, rel_tol * |integral|).
template <class F>
QuadratureResult integrate_panels(F&& f, const std::vector<double>& bounds,
                                  double rel_tol, double abs_tol = 0.0,
                                  int max_intervals = 20000) {
    struct Panel {
        double a, b, value, error;
    };
    QuadratureResult res;
    std::vector<Panel> panels;
    panels.reserve(64);
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
        Panel p{bounds[i], bounds[i + 1], 0.0, 0.0};
        detail::gk15(f, p.a, p.b, p.value, p.error);
        res.evaluations += 15;
        panels.push_back(p);
    }

    while (true) {
        double total = 0.0, err = 0.0;
        size_t worst = 0;
        for (size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        res.value = total;
        res.abs_error = err;
        if (err <= std::max(abs_tol, rel_tol * std::fabs(total))) {
            res.converged = true;
            return res;
        }
        if (static_cast<int>(panels.size()) >= max_intervals) return res;
        Panel p = panels[worst];
        double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) return res;  // interval exhausted
        Panel left{p.a, mid, 0.0, 0.0}, right{mid, p.b, 0.0, 0.0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        res.evaluations += 30;
        panels[worst] = left;
        panels.push_back(right);
    }
}

template <class F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol,
                           double abs_tol = 0.0, int max_intervals = 20000) {
    return integrate_panels(static_cast<F&&>(f), {a, b}, rel_tol, abs_tol,
                            max_intervals);
}

}  // namespace nanoshell
