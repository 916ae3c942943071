#include "nanoshell/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nanoshell/detail/rootscan.hpp"
#include "nanoshell/errors.hpp"
#include "nanoshell/exact.hpp"
#include "nanoshell/quadrature.hpp"

namespace nanoshell {

namespace {

constexpr double kPi = 3.14159265358979323846;

double langer(int l) { return l + 0.5; }

void check_qn(const QuantumNumbers& qn) {
    if (qn.l < 0 || qn.nr < 0)
        throw DomainError("quantum numbers must be non-negative");
}

void check_eta(const ShellParams& p) {
    if (!(p.eta > 0.0) || !std::isfinite(p.eta))
        throw DomainError("shell radius eta must be positive and finite");
}

// Inverse-trig arguments are provably inside [-1, 1] on the validity window;
// only boundary roundoff gets clamped.
double clamp_unit(double arg) {
    if (arg > 1.0) {
        if (arg > 1.0 + 1e-12)
            throw RegimeError("semiclassical phase argument left [-1, 1]");
        return 1.0;
    }
    if (arg < -1.0) {
        if (arg < -1.0 - 1e-12)
            throw RegimeError("semiclassical phase argument left [-1, 1]");
        return -1.0;
    }
    return arg;
}

// Upper edge of the xi window on which the quantization function is defined:
// xi^2 <= min(1/L^2, 2/eta - (L/eta)^2). The second bound also keeps the
// inner turning point inside the shell.
double window_top_sq(double eta, double L) {
    return std::min(1.0 / (L * L), 2.0 / eta - (L / eta) * (L / eta));
}

// Find the root of a continuous strictly decreasing function g with
// g(0+) = +inf: scan downward from `top` (where g < 0), extending the floor
// until the sign change appears, then bisect.
template <class G>
detail::ScanRoot falling_root(G&& g, double top, double start_floor,
                              const std::string& what) {
    auto eval = [&](double x) { return detail::ScanEval{g(x), false}; };
    double f_top = g(top);
    if (f_top == 0.0) return {top, 0.0};
    if (f_top > 0.0)
        throw BracketError(what + ": no sign change below the window edge");
    double hi = top, f_hi = f_top;
    double floor = std::min(start_floor, 0.5 * top);
    for (int round = 0; round < 60; ++round) {
        const int n = 2000;
        double px = hi, pf = f_hi;
        for (int i = 1; i <= n; ++i) {
            double x = hi + (floor - hi) * static_cast<double>(i) / n;
            double f = g(x);
            if (f == 0.0) return {x, 0.0};
            if (f > 0.0)
                return detail::bisect_root(eval, x, px, f, pf, 1e-12);
            px = x;
            pf = f;
        }
        hi = floor;
        f_hi = pf;
        floor *= 0.5;
        if (floor < 1e-8) break;
    }
    throw BracketError(what + ": no root found in the validity window");
}

}  // namespace

TurningPoints turning_points(const ShellParams& p, int l, double xi) {
    check_eta(p);
    if (l < 0) throw DomainError("l must be non-negative");
    if (!xi_window(p).contains(xi))
        throw DomainError("xi outside the bound-state window");
    const double L = langer(l);
    const double xiL = xi * L;
    if (xiL >= 1.0)
        throw DomainError(
            "xi*(l+1/2) >= 1: no classical region in the Coulomb tail");
    const double s = std::sqrt((1.0 - xiL) * (1.0 + xiL));
    TurningPoints tp;
    tp.outer = (1.0 + s) / (xi * xi);
    // L^2/(1+s) is the cancellation-free form of (1-s)/xi^2.
    const double coulomb_inner = L * L / (1.0 + s);
    const double lambda = std::sqrt(2.0 / p.eta - xi * xi);
    const double inner_flat = L / lambda;
    if (inner_flat <= p.eta) {
        tp.regime = TurningPoints::Regime::two_piece;
        tp.inner = inner_flat;
    } else if (coulomb_inner >= p.eta) {
        tp.regime = TurningPoints::Regime::coulomb_only;
        tp.inner = coulomb_inner;
    } else {
        // Both Coulomb zeros sit inside the shell, where the potential is
        // actually flat, and the flat branch admits no zero either: the
        // state is classically forbidden everywhere.
        throw DomainError("no classical region at this xi");
    }
    return tp;
}

double quantization_residual(const ShellParams& p, const QuantumNumbers& qn,
                             double xi) {
    check_eta(p);
    check_qn(qn);
    if (!(xi > 0.0) || !std::isfinite(xi))
        throw DomainError("xi must be positive");
    const double eta = p.eta;
    const double L = langer(qn.l);
    const double xiL = xi * L;
    if (xiL >= 1.0)
        throw RegimeError("xi*(l+1/2) >= 1: quantization function undefined");
    const double s = std::sqrt((1.0 - xiL) * (1.0 + xiL));
    const double under = 2.0 * eta - (xi * eta) * (xi * eta);
    if (under <= 0.0)
        throw RegimeError("xi above the shell window edge");
    const double a1 = clamp_unit((1.0 - L * L / eta) / s);
    const double a2 = clamp_unit(L / std::sqrt(under));
    const double a3 = clamp_unit((1.0 - xi * xi * eta) / s);
    return std::asin(a1) - std::acos(a2) + std::asin(a3) / xiL -
           (kPi / L) * (qn.nr + 0.5 * (L + 1.0 - 1.0 / xi));
}

WkbLevel wkb_level(const ShellParams& p, const QuantumNumbers& qn) {
    check_eta(p);
    check_qn(qn);
    const double eta = p.eta;
    const double L = langer(qn.l);

    WkbLevel out;
    out.qn = qn;

    // A level whose turning points both sit outside the shell never feels the
    // flat floor, so it is plain hydrogen. Accept 1/(l+nr+1) whenever its
    // square lands in the window where that happens.
    const double xi_h = 1.0 / (qn.l + qn.nr + 1);
    const double win_lo = 2.0 / eta - (L / eta) * (L / eta);
    const double win_hi = std::min(1.0 / eta, 1.0 / (L * L));
    if (xi_h * xi_h >= win_lo && xi_h * xi_h <= win_hi) {
        out.xi = xi_h;
        out.regime = WkbLevel::Regime::hydrogen_window;
        out.tp = turning_points(p, qn.l, xi_h);
        out.residual = 0.0;
        return out;
    }

    // Transcendental branch. Its window is empty for l > sqrt(2*eta) - 1/2;
    // the hydrogen window provably admits every such (l, nr), so this guard
    // is unreachable, but it keeps the invariant explicit.
    if (L * L >= 2.0 * eta)
        throw DomainError(
            "semiclassical validity requires l <= sqrt(2*eta) - 1/2");
    const double top = std::sqrt(window_top_sq(eta, L)) * (1.0 - 1e-9);
    auto g = [&](double x) { return quantization_residual(p, qn, x); };
    detail::ScanRoot root =
        falling_root(g, top, 0.3 / (qn.nr + qn.l + 2.0), "quantization");
    out.xi = root.x;
    out.regime = WkbLevel::Regime::transcendental;
    out.tp = turning_points(p, qn.l, root.x);
    out.residual = std::fabs(root.residual);
    return out;
}

double phase_integral(const ShellParams& p, int l, double xi) {
    const TurningPoints tp = turning_points(p, l, xi);
    const double eta = p.eta;
    const double L = langer(l);
    const double xi2 = xi * xi;
    auto q_flat = [&](double rho) {
        return std::sqrt(std::max(2.0 / eta - xi2 - (L / rho) * (L / rho), 0.0));
    };
    auto q_coul = [&](double rho) {
        return std::sqrt(std::max(2.0 / rho - xi2 - (L / rho) * (L / rho), 0.0));
    };
    // rho = tp +- t^2 removes the sqrt singularity at each turning point.
    auto piece = [&](auto&& q, double tp_at, double other, double sgn) {
        const double width = sgn * (other - tp_at);
        if (!(width > 0.0)) return 0.0;
        const double tmax = std::sqrt(width);
        auto f = [&](double t) { return 2.0 * t * q(tp_at + sgn * t * t); };
        // The absolute floor keeps the quadrature convergent where the
        // allowed region (and with it the integral) collapses to zero.
        QuadratureResult r = integrate_panels(f, {0.0, tmax}, 1e-12, 1e-13);
        if (!r.converged)
            throw ConvergenceError("phase integral quadrature failed");
        return r.value;
    };
    if (tp.regime == TurningPoints::Regime::two_piece)
        return piece(q_flat, tp.inner, eta, +1.0) +
               piece(q_coul, tp.outer, eta, -1.0);
    const double mid = 0.5 * (tp.inner + tp.outer);
    return piece(q_coul, tp.inner, mid, +1.0) +
           piece(q_coul, tp.outer, mid, -1.0);
}

WkbLevel wkb_level_from_phase_integral(const ShellParams& p,
                                       const QuantumNumbers& qn) {
    check_eta(p);
    check_qn(qn);
    const double L = langer(qn.l);
    const double target = kPi * (qn.nr + 0.5);
    // Upper edge of the classical window, where the allowed region collapses
    // to a point and the phase vanishes: for eta > L^2 the turning points
    // merge at the shell boundary, for eta < L^2 at the circular orbit.
    const double top = (p.eta >= L * L)
                           ? std::sqrt(window_top_sq(p.eta, L)) * (1.0 - 1e-9)
                           : (1.0 / L) * (1.0 - 1e-9);
    auto g = [&](double x) { return phase_integral(p, qn.l, x) - target; };
    detail::ScanRoot root =
        falling_root(g, top, 0.3 / (qn.nr + qn.l + 2.0), "phase integral");
    WkbLevel out;
    out.qn = qn;
    out.xi = root.x;
    out.tp = turning_points(p, qn.l, root.x);
    out.regime = (out.tp.regime == TurningPoints::Regime::coulomb_only)
                     ? WkbLevel::Regime::hydrogen_window
                     : WkbLevel::Regime::transcendental;
    out.residual = std::fabs(root.residual);
    return out;
}

double xi_eta_slope(const ShellParams& p, const QuantumNumbers& qn, double h) {
    check_eta(p);
    check_qn(qn);
    if (h == 0.0) h = p.eta * 1e-3;
    if (!(h > 0.0) || h >= p.eta)
        throw DomainError("slope step must satisfy 0 < h < eta");
    const WkbLevel lo = wkb_level(ShellParams{p.eta - h}, qn);
    const WkbLevel hi = wkb_level(ShellParams{p.eta + h}, qn);
    if (lo.regime != WkbLevel::Regime::transcendental ||
        hi.regime != WkbLevel::Regime::transcendental)
        throw RegimeError("slope stencil leaves the transcendental regime");
    return (hi.xi - lo.xi) / (2.0 * h);
}

DeviationSummary wkb_vs_exact(const ShellParams& p, int lmax, int nrmax) {
    check_eta(p);
    if (lmax < 0 || nrmax < 0)
        throw DomainError("lmax and nrmax must be non-negative");
    DeviationSummary out;
    for (int l = 0; l <= lmax; ++l) {
        const LevelList exact = find_levels(p, l, nrmax);
        for (int nr = 0; nr <= nrmax; ++nr) {
            if (nr >= static_cast<int>(exact.levels.size())) break;
            const WkbLevel w = wkb_level(p, QuantumNumbers{l, nr});
            WkbDeviation row;
            row.qn = QuantumNumbers{l, nr};
            row.exact_xi = exact.levels[nr].xi;
            row.wkb_xi = w.xi;
            row.deviation = std::fabs(row.exact_xi - row.wkb_xi);
            out.rows.push_back(row);
        }
    }
    std::vector<double> devs;
    devs.reserve(out.rows.size());
    for (const auto& r : out.rows) devs.push_back(r.deviation);
    if (!devs.empty()) {
        out.max_deviation = *std::max_element(devs.begin(), devs.end());
        std::sort(devs.begin(), devs.end());
        const size_t n = devs.size();
        out.median_deviation = (n % 2 == 1)
                                   ? devs[n / 2]
                                   : 0.5 * (devs[n / 2 - 1] + devs[n / 2]);
    }
    return out;
}

}  // namespace nanoshell
