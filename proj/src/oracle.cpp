#include "nanoshell/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nanoshell/detail/rk45.hpp"
#include "nanoshell/detail/rootscan.hpp"
#include "nanoshell/errors.hpp"

namespace nanoshell {

namespace {

constexpr double kRho0 = 1e-6;

double outer_radius(double rho_match, double xi) { return rho_match + 40.0 / xi; }

// Tracks strict sign changes of u across accepted steps, ignoring exact zeros.
struct SignCounter {
    int last = 0;
    int changes = 0;
    void feed(double u) {
        int s = u > 0.0 ? 1 : (u < 0.0 ? -1 : 0);
        if (s != 0) {
            if (last != 0 && s != last) ++changes;
            last = s;
        }
    }
};

struct Branch {
    double rho = 0.0;
    detail::Vec2 y{0.0, 0.0};
    double log_scale = 0.0;
    SignCounter nodes;
};

Branch seed_interior(double v0, int l, double xi) {
    if (!(v0 > 0.0)) throw DomainError("integrate_interior: v0 must be > 0");
    double q = 2.0 * v0 - xi * xi;  // u'' = (l(l+1)/rho^2 - q) u
    Branch b;
    b.rho = kRho0;
    // Regular solution ~ rho^{l+1} (1 - q rho^2 / (2(2l+3)) + ...), with the
    // overall rho0^{l+1} factored into log_scale.
    double corr = q * kRho0 * kRho0 / (2.0 * (2.0 * l + 3.0));
    b.y[0] = 1.0 - corr;
    b.y[1] = ((l + 1.0) - (l + 3.0) * corr) / kRho0;
    b.log_scale = (l + 1.0) * std::log(kRho0);
    b.nodes.feed(b.y[0]);
    return b;
}

long advance(Branch& b, double rho_to, double q_const, double charge, int l) {
    // q_const applies inside the shell; outside the local wavenumber term is
    // 2*charge/rho - xi^2 and q_const carries -xi^2 with charge > 0.
    double ll1 = static_cast<double>(l) * (l + 1.0);
    auto rhs = [&](double rho, const detail::Vec2& y) -> detail::Vec2 {
        double q = q_const + (charge != 0.0 ? 2.0 * charge / rho : 0.0);
        return {y[1], (ll1 / (rho * rho) - q) * y[0]};
    };
    detail::RkOptions opt;
    opt.rtol = 1e-13;
    SignCounter* nodes = &b.nodes;
    detail::RkStats st = rk45_integrate(
        rhs, b.rho, b.y, rho_to, opt, &b.log_scale,
        [nodes](double, const detail::Vec2& y) { nodes->feed(y[0]); });
    if (!st.ok)
        throw ConvergenceError("radial integration exceeded the step budget");
    return st.steps;
}

BranchState finish(const Branch& b) {
    return {b.y[0], b.y[1], b.log_scale, b.nodes.changes};
}

Branch seed_exterior(double charge, double rho_max, int l, double xi) {
    if (!(xi > 0.0)) throw DomainError("integrate_exterior: xi must be > 0");
    double nu = charge / xi;
    double ll1 = static_cast<double>(l) * (l + 1.0);
    // u = e^{-xi rho} rho^nu S, S = sum a_k rho^{-k}; substituting into the
    // radial equation gives a_k = -a_{k-1} [(nu-k+1)(nu-k) - l(l+1)] / (2 xi k).
    // The asymptotic tail is summed to its globally smallest term (a short
    // initial hump is normal when 1/xi^2 is comparable to 2 xi rho_max); the
    // omitted-term bound must still be negligible, else rho_max is too small.
    double s = 1.0, sp = 0.0;  // running S and S' sums
    double best_s = 1.0, best_sp = 0.0, best = 1.0;
    double a = 1.0;
    bool converged = false;
    for (int k = 1; k <= 60; ++k) {
        a *= -((nu - k + 1.0) * (nu - k) - ll1) / (2.0 * xi * k);
        double term = a * std::pow(rho_max, -k);
        if (term == 0.0) {  // series terminated: seed is exact
            converged = true;
            best = 0.0;
            best_s = s;
            best_sp = sp;
            break;
        }
        s += term;
        sp += -k * term / rho_max;
        double mag = std::fabs(term);
        if (mag < best) {
            best = mag;
            best_s = s;
            best_sp = sp;
        }
        if (mag < 1e-16 * std::fabs(s)) {
            converged = true;
            break;
        }
    }
    if (!converged && best > 1e-9 * std::fabs(best_s))
        throw ConvergenceError(
            "integrate_exterior: decaying-tail series stalled at relative size " +
            std::to_string(best / std::fabs(best_s)) + "; rho_max too small");
    s = best_s;
    sp = best_sp;
    Branch b;
    b.rho = rho_max;
    b.y[0] = s;
    b.y[1] = (-xi + nu / rho_max) * s + sp;
    b.log_scale = -xi * rho_max + nu * std::log(rho_max);
    b.nodes.feed(b.y[0]);
    return b;
}

struct MatchEval {
    double wronskian = 0.0;  // scaled, sign-valid
    double mismatch = 0.0;
    int node_count = 0;
    long interior_steps = 0;
    long exterior_steps = 0;
};

MatchEval match_once(double v0, double charge, double rho_match, double rho_max,
                     int l, double xi) {
    Branch bi = seed_interior(v0, l, xi);
    long ni = advance(bi, rho_match, 2.0 * v0 - xi * xi, 0.0, l);
    Branch be = seed_exterior(charge, rho_max, l, xi);
    long ne = advance(be, rho_match, -xi * xi, charge, l);
    MatchEval m;
    m.wronskian = bi.y[1] * be.y[0] - bi.y[0] * be.y[1];
    if (bi.y[0] != 0.0 && be.y[0] != 0.0)
        m.mismatch = std::fabs(bi.y[1] / bi.y[0] - be.y[1] / be.y[0]);
    else
        m.mismatch = HUGE_VAL;
    m.node_count = bi.nodes.changes + be.nodes.changes;
    m.interior_steps = ni;
    m.exterior_steps = ne;
    return m;
}

ShootResult bisect_match(double v0, double charge, double rho_match, int l,
                         double xi_lo, double xi_hi) {
    if (!(xi_lo > 0.0) || !(xi_hi > xi_lo))
        throw DomainError("shoot: need 0 < xi_lo < xi_hi");
    double rho_max = outer_radius(rho_match, xi_lo);
    auto eval = [&](double xi) {
        return match_once(v0, charge, rho_match, rho_max, l, xi);
    };
    MatchEval mlo = eval(xi_lo), mhi = eval(xi_hi);
    if ((mlo.wronskian > 0.0) == (mhi.wronskian > 0.0) || mlo.wronskian == 0.0 ||
        mhi.wronskian == 0.0)
        throw BracketError("shoot: Wronskian does not change sign on [" +
                           std::to_string(xi_lo) + ", " + std::to_string(xi_hi) +
                           "]");
    if (std::abs(mlo.node_count - mhi.node_count) > 1)
        throw BracketError(
            "shoot: node count jumps by more than one inside the bracket; "
            "split it before bisecting");
    // Exit width well below 1e-11: near interior nodes of u at eta the
    // mismatch slope reaches ~3e4, so meeting the 1e-9 defect bound needs
    // the root pinned to a few 1e-15 in xi.
    double wlo = mlo.wronskian;
    while (xi_hi - xi_lo > 2e-15) {
        double mid = 0.5 * (xi_lo + xi_hi);
        if (mid <= xi_lo || mid >= xi_hi) break;
        double wm = eval(mid).wronskian;
        if (wm == 0.0) {
            xi_lo = mid;
            xi_hi = mid;
            break;
        }
        if ((wm > 0.0) == (wlo > 0.0)) {
            xi_lo = mid;
            wlo = wm;
        } else {
            xi_hi = mid;
        }
    }
    double xi = 0.5 * (xi_lo + xi_hi);
    MatchEval m = match_once(v0, charge, rho_match, rho_max, l, xi);
    ShootResult r;
    r.xi = xi;
    r.log_derivative_mismatch = m.mismatch;
    r.node_count = m.node_count;
    r.grid = {kRho0, rho_match, rho_max, m.interior_steps, m.exterior_steps};
    return r;
}

}  // namespace

BranchState integrate_interior(double v0, double rho_match, int l, double xi) {
    if (!(rho_match > kRho0))
        throw DomainError("integrate_interior: rho_match must exceed 1e-6");
    Branch b = seed_interior(v0, l, xi);
    advance(b, rho_match, 2.0 * v0 - xi * xi, 0.0, l);
    return finish(b);
}

BranchState integrate_exterior(double charge, double rho_match, double rho_max,
                               int l, double xi) {
    if (!(rho_max > rho_match))
        throw DomainError("integrate_exterior: rho_max must exceed rho_match");
    Branch b = seed_exterior(charge, rho_max, l, xi);
    advance(b, rho_match, -xi * xi, charge, l);
    return finish(b);
}

double interior_log_derivative(const ShellParams& p, int l, double xi) {
    if (!xi_window(p).contains(xi))
        throw DomainError("interior_log_derivative: xi outside the bound window");
    BranchState b = integrate_interior(1.0 / p.eta, p.eta, l, xi);
    if (b.u == 0.0)
        throw ConvergenceError("interior_log_derivative: u vanishes at eta");
    return b.du / b.u;
}

double exterior_log_derivative(const ShellParams& p, int l, double xi) {
    if (!xi_window(p).contains(xi))
        throw DomainError("exterior_log_derivative: xi outside the bound window");
    BranchState b =
        integrate_exterior(1.0, p.eta, outer_radius(p.eta, xi), l, xi);
    if (b.u == 0.0)
        throw ConvergenceError("exterior_log_derivative: u vanishes at eta");
    return b.du / b.u;
}

ShootResult shoot(const ShellParams& p, int l, double xi_lo, double xi_hi) {
    EnergyWindow w = xi_window(p);
    if (!w.contains(xi_lo) || !w.contains(xi_hi))
        throw DomainError("shoot: bracket leaves the bound window");
    return bisect_match(1.0 / p.eta, 1.0, p.eta, l, xi_lo, xi_hi);
}

ShootResult find_level_near(const ShellParams& p, int l, double xi_guess) {
    EnergyWindow w = xi_window(p);
    if (!w.contains(xi_guess))
        throw DomainError("find_level_near: xi_guess outside the bound window");
    double delta = 1e-6 * xi_guess;
    for (int attempt = 0; attempt < 11; ++attempt) {
        double lo = std::max(xi_guess - delta, w.xi_max * 1e-6);
        double hi = std::min(xi_guess + delta, w.xi_max * (1.0 - 1e-9));
        try {
            return shoot(p, l, lo, hi);
        } catch (const BracketError&) {
            delta *= 2.0;
        }
    }
    throw BracketError("find_level_near: no sign change within 0.2% of xi=" +
                       std::to_string(xi_guess));
}

LevelList oracle_find_levels(const ShellParams& p, int l, int nr_max) {
    if (l < 0 || nr_max < 0)
        throw DomainError("oracle_find_levels: l, nr_max must be >= 0");
    LevelList out;
    out.requested = nr_max + 1;
    EnergyWindow w = xi_window(p);
    double hi = w.xi_max * (1.0 - 1e-9);
    double start_floor = 0.3 / (nr_max + l + 2.0);
    auto eval = [&](double xi) -> detail::ScanEval {
        double rho_max = outer_radius(p.eta, xi);
        return {match_once(1.0 / p.eta, 1.0, p.eta, rho_max, l, xi).wronskian, false};
    };
    std::vector<detail::ScanRoot> roots =
        detail::descending_roots(eval, hi, start_floor, out.requested, 1e-10);
    out.complete = static_cast<int>(roots.size()) >= out.requested;
    int keep = std::min<int>(roots.size(), out.requested);
    for (int i = 0; i < keep; ++i) {
        double guess = roots[i].x;
        ShootResult r = find_level_near(p, l, guess);
        EigenSolution s;
        s.qn = {l, i};
        s.xi = r.xi;
        s.energy_ry = energy_ry_from_xi(r.xi);
        s.lambda_int = std::sqrt(2.0 / p.eta - r.xi * r.xi);
        s.residual = r.log_derivative_mismatch;
        out.levels.push_back(s);
    }
    return out;
}

std::vector<double> oracle_wavefunction(const ShellParams& p, int l, double xi,
                                        const std::vector<double>& rho) {
    EnergyWindow w = xi_window(p);
    if (!w.contains(xi))
        throw DomainError("oracle_wavefunction: xi outside the bound window");
    double rho_max = outer_radius(p.eta, xi);
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (rho[i] < kRho0 || rho[i] > rho_max * (1.0 + 1e-12))
            throw DomainError("oracle_wavefunction: sample radius out of range");
        if (i > 0 && rho[i] <= rho[i - 1])
            throw DomainError("oracle_wavefunction: radii must be ascending");
    }

    struct LogSample {
        int sign = 0;
        double ln = 0.0;  // ln |u|
    };
    std::vector<LogSample> samples(rho.size());

    double v0 = 1.0 / p.eta;
    double qc = 2.0 * v0 - xi * xi;

    // Outward sweep over samples inside the shell, then on to eta.
    Branch bi = seed_interior(v0, l, xi);
    std::size_t n_in = 0;
    while (n_in < rho.size() && rho[n_in] <= p.eta) ++n_in;
    for (std::size_t i = 0; i < n_in; ++i) {
        advance(bi, rho[i], qc, 0.0, l);
        samples[i].sign = bi.y[0] > 0.0 ? 1 : (bi.y[0] < 0.0 ? -1 : 0);
        samples[i].ln = std::log(std::fabs(bi.y[0])) + bi.log_scale;
    }
    advance(bi, p.eta, qc, 0.0, l);
    if (bi.y[0] == 0.0)
        throw ConvergenceError("oracle_wavefunction: u vanishes at eta");
    int sign_eta = bi.y[0] > 0.0 ? 1 : -1;
    double ln_eta = std::log(std::fabs(bi.y[0])) + bi.log_scale;

    // Inward sweep over the outside samples (descending), then on to eta to
    // pick up this branch's own scale at the matching radius.
    Branch be = seed_exterior(1.0, rho_max, l, xi);
    for (std::size_t i = rho.size(); i > n_in; --i) {
        advance(be, rho[i - 1], -xi * xi, 1.0, l);
        samples[i - 1].sign = be.y[0] > 0.0 ? 1 : (be.y[0] < 0.0 ? -1 : 0);
        samples[i - 1].ln = std::log(std::fabs(be.y[0])) + be.log_scale;
    }
    advance(be, p.eta, -xi * xi, 1.0, l);
    if (be.y[0] == 0.0)
        throw ConvergenceError("oracle_wavefunction: u vanishes at eta");
    int sign_eta_e = be.y[0] > 0.0 ? 1 : -1;
    double ln_eta_e = std::log(std::fabs(be.y[0])) + be.log_scale;

    // phi = (u / rho) / (u(eta) / eta), each branch against its own u(eta).
    std::vector<double> phi(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (samples[i].sign == 0) {
            phi[i] = 0.0;
            continue;
        }
        bool inside = i < n_in;
        double ref_ln = inside ? ln_eta : ln_eta_e;
        int ref_sign = inside ? sign_eta : sign_eta_e;
        phi[i] = samples[i].sign * ref_sign *
                 std::exp(samples[i].ln - ref_ln + std::log(p.eta / rho[i]));
    }
    return phi;
}

ShootResult well_shoot(double v0, double r, int l, double xi_lo, double xi_hi) {
    if (!(v0 > 0.0) || !(r > 0.0))
        throw DomainError("well_shoot: v0, r must be > 0");
    if (!(xi_hi * xi_hi < 2.0 * v0))
        throw DomainError("well_shoot: bracket leaves the bound window");
    return bisect_match(v0, 0.0, r, l, xi_lo, xi_hi);
}

}  // namespace nanoshell
