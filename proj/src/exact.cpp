#include "nanoshell/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nanoshell/detail/rootscan.hpp"
#include "nanoshell/specfun.hpp"

namespace nanoshell {

namespace {

// Starting scan floor: below the deepest wanted hydrogenic level
// 1/(nr_max+l+1) in the small-eta regime. For large eta the whole window
// sits lower; descending_roots then starts at half the window and extends
// downward on demand.
double scan_floor(int l, int nr_max) { return 0.3 / (nr_max + l + 2.0); }

}  // namespace

DispersionEval dispersion(const ShellParams& p, int l, double xi) {
    if (l < 0) throw DomainError("dispersion: l must be >= 0");
    EnergyWindow w = xi_window(p);
    if (!w.contains(xi))
        throw DomainError("dispersion: xi=" + std::to_string(xi) +
                          " outside the bound window (0, " + std::to_string(w.xi_max) + ")");

    const double eta = p.eta;
    const double lambda = std::sqrt(2.0 / eta - xi * xi);
    const double beta = lambda / xi;

    specfun::BesselPair bj = specfun::spherical_bessel_pair(l, lambda * eta);
    double bmag = std::max(std::fabs(bj.jl), std::fabs(bj.jlp1));
    bool pole = bmag == 0.0 || std::fabs(bj.jl) <= 1e-7 * bmag;

    const double a = l + 1.0 - 1.0 / xi;
    specfun::UDerivativePair u = specfun::confluent_u_with_derivative(a, 2.0 * l + 2.0, 2.0 * xi * eta);
    const double u2 = u.u;
    const double u3 = u.u - u.du;  // U(a, 2l+3, x), same exp(log_scale)

    // Matching condition with the shell-side Bessel factor multiplied through:
    //   U(a,2l+3,X) j_l - (1/2)(j_l + beta j_{l+1}) U(a,2l+2,X) = 0,
    // scaled by the larger U magnitude so roots are O(1) sign changes.
    double raw = u3 * bj.jl - 0.5 * (bj.jl + beta * bj.jlp1) * u2;
    double scale = std::max(std::fabs(u2), std::fabs(u3));
    if (scale == 0.0)
        throw ConvergenceError("dispersion: both U values vanished at xi=" + std::to_string(xi));
    return {raw / scale, pole};
}

LevelList find_levels(const ShellParams& p, int l, int nr_max) {
    if (l < 0 || nr_max < 0) throw DomainError("find_levels: l, nr_max must be >= 0");
    LevelList out;
    out.requested = nr_max + 1;

    EnergyWindow w = xi_window(p);
    // The shell potential is nowhere below the bare Coulomb one, so every
    // level lies above its hydrogen counterpart: xi < 1/(nr+l+1) <= 1/(l+1).
    // Capping the scan there keeps small-eta windows cheap.
    const double hi = std::min(w.xi_max * (1.0 - 1e-9), 1.0 / (l + 1.0));

    auto eval = [&](double xi) -> detail::ScanEval {
        DispersionEval d = dispersion(p, l, xi);
        return {d.value, d.pole};
    };
    // Descending xi defines nr = 0, 1, ...; keep the requested count.
    std::vector<detail::ScanRoot> roots = detail::descending_roots(
        eval, hi, scan_floor(l, nr_max), out.requested, 1e-10);
    out.complete = static_cast<int>(roots.size()) >= out.requested;
    int keep = std::min<int>(roots.size(), out.requested);
    for (int i = 0; i < keep; ++i) {
        EigenSolution s;
        s.qn = {l, i};
        s.xi = roots[i].x;
        s.energy_ry = energy_ry_from_xi(s.xi);
        s.lambda_int = std::sqrt(2.0 / p.eta - s.xi * s.xi);
        s.residual = std::fabs(dispersion(p, l, s.xi).value);
        out.levels.push_back(s);
    }
    return out;
}

HydrogenDeviation hydrogen_limit_check(double eta_small, int l, int nr) {
    LevelList ll = find_levels({eta_small}, l, nr);
    if (static_cast<int>(ll.levels.size()) <= nr)
        throw BracketError("hydrogen_limit_check: level (l=" + std::to_string(l) +
                           ", nr=" + std::to_string(nr) + ") not found at eta=" +
                           std::to_string(eta_small));
    HydrogenDeviation d;
    d.xi = ll.levels[nr].xi;
    d.hydrogen_xi = 1.0 / (nr + l + 1.0);
    d.deviation = std::fabs(d.xi - d.hydrogen_xi);
    return d;
}

DispersionEval well_dispersion(double v0, double r, int l, double xi) {
    if (!(v0 > 0.0) || !(r > 0.0)) throw DomainError("well_dispersion: v0, r must be > 0");
    if (l < 0) throw DomainError("well_dispersion: l must be >= 0");
    if (!(xi > 0.0) || !(xi * xi < 2.0 * v0))
        throw DomainError("well_dispersion: xi outside (0, sqrt(2 v0))");

    // Interior wavenumber k, exterior decay xi. Continuity of the
    // log-derivative of phi: k j_l'(k r)/j_l(k r) = xi k_l'(xi r)/k_l(xi r),
    // with j_l' = (l/x) j_l - j_{l+1}. Multiplied through by j_l(k r).
    const double k = std::sqrt(2.0 * v0 - xi * xi);
    specfun::BesselPair bj = specfun::spherical_bessel_pair(l, k * r);
    double bmag = std::max(std::fabs(bj.jl), std::fabs(bj.jlp1));
    bool pole = bmag == 0.0 || std::fabs(bj.jl) <= 1e-7 * bmag;
    double ld_out = xi * specfun::spherical_hankel1_imag(l, xi * r);
    double raw = k * (l / (k * r) * bj.jl - bj.jlp1) - ld_out * bj.jl;
    return {raw / bmag, pole};
}

std::vector<double> find_well_levels(double v0, double r, int l, int max_count) {
    if (max_count < 1) throw DomainError("find_well_levels: max_count must be >= 1");
    double hi = std::sqrt(2.0 * v0) * (1.0 - 1e-9);
    double lo = hi * 1e-6;
    auto eval = [&](double xi) -> detail::ScanEval {
        DispersionEval d = well_dispersion(v0, r, l, xi);
        return {d.value, d.pole};
    };
    std::vector<detail::ScanRoot> roots = detail::scan_roots(eval, lo, hi, 4000, 1e-12);
    std::sort(roots.begin(), roots.end(),
              [](const detail::ScanRoot& a, const detail::ScanRoot& b) { return a.x > b.x; });
    std::vector<double> out;
    for (int i = 0; i < std::min<int>(roots.size(), max_count); ++i) out.push_back(roots[i].x);
    return out;
}

}  // namespace nanoshell
