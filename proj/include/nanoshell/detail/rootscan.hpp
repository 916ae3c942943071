#pragma once

#include <cmath>
#include <vector>

#include "nanoshell/errors.hpp"

namespace nanoshell::detail {

/// One evaluation of a bracketing function: value plus a flag marking points
/// where the sign is unusable (e.g. an interior Bessel factor at a zero).
struct ScanEval {
    double f = 0.0;
    bool pole = false;
};

struct ScanRoot {
    double x = 0.0;
    double residual = 0.0;
};

// Bisect a sign change on [a, b] (fa, fb of opposite sign, neither a pole).
// Pole-flagged midpoints are dodged by probing off-centre points. A final
// secant pass polishes the root inside the last bracket.
template <class F>
ScanRoot bisect_root(F&& eval, double a, double b, double fa, double fb,
                     double xtol) {
    for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
        double m = 0.5 * (a + b);
        ScanEval em = eval(m);
        if (em.pole) {
            bool placed = false;
            for (double frac : {0.45, 0.55, 0.4, 0.6, 0.35, 0.65}) {
                m = a + frac * (b - a);
                em = eval(m);
                if (!em.pole) {
                    placed = true;
                    break;
                }
            }
            if (!placed) break;  // pole band fills the bracket; keep midpoint
        }
        if (em.f == 0.0) return {m, 0.0};
        if ((fa < 0.0) != (em.f < 0.0)) {
            b = m;
            fb = em.f;
        } else {
            a = m;
            fa = em.f;
        }
    }
    // Secant polish within [a, b].
    double x0 = a, x1 = b, f0 = fa, f1 = fb;
    for (int it = 0; it < 3; ++it) {
        double denom = f1 - f0;
        if (denom == 0.0) break;
        double x2 = x1 - f1 * (x1 - x0) / denom;
        if (!(x2 > a) || !(x2 < b)) break;
        ScanEval e2 = eval(x2);
        if (e2.pole) break;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = e2.f;
        if (f1 == 0.0) break;
    }
    double root = std::fabs(f1) <= std::fabs(f0) ? x1 : x0;
    double resid = std::fabs(f1) <= std::fabs(f0) ? f1 : f0;
    return {root, resid};
}

// Recursively shrink a sign-change interval whose interior touched
// pole-flagged grid points until both endpoints evaluate pole-free, then
// bisect. Pole bands are isolated and narrow, so a few halvings suffice.
template <class F>
void resolve_bracket(F&& eval, double a, double b, ScanEval ea, ScanEval eb,
                     std::vector<ScanRoot>& out, double xtol, int depth = 0) {
    if (depth > 60) throw BracketError("root bracket could not be freed of pole points");
    if (ea.pole || eb.pole) {
        double m = 0.5 * (a + b);
        ScanEval em = eval(m);
        resolve_bracket(eval, a, m, ea, em, out, xtol, depth + 1);
        resolve_bracket(eval, m, b, em, eb, out, xtol, depth + 1);
        return;
    }
    if (ea.f == 0.0) {
        out.push_back({a, 0.0});
        return;
    }
    if ((ea.f < 0.0) != (eb.f < 0.0))
        out.push_back(bisect_root(eval, a, b, ea.f, eb.f, xtol));
}

/// A sign change spotted on the grid, not yet refined to a root.
struct ScanBracket {
    double a = 0.0, b = 0.0;
    ScanEval ea, eb;
    bool pole_between = false;  // pole-flagged grid points inside (a, b)
};

/// Walk a uniform grid of `n` intervals over [lo, hi] and collect every sign
/// change of eval(x).f. Pole-flagged grid points are skipped for sign
/// chaining and remembered so refinement can subdivide around them.
template <class F>
std::vector<ScanBracket> scan_brackets(F&& eval, double lo, double hi, long n) {
    std::vector<ScanBracket> out;
    if (!(hi > lo) || n < 1) return out;
    double prev_x = lo;
    ScanEval prev = eval(lo);
    bool pole_between = prev.pole;
    for (long i = 1; i <= n; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        ScanEval e = eval(x);
        if (e.pole) {
            pole_between = true;
            continue;
        }
        if (prev.pole) {
            // No usable left endpoint yet.
            prev_x = x;
            prev = e;
            pole_between = false;
            continue;
        }
        if ((prev.f < 0.0) != (e.f < 0.0) || e.f == 0.0)
            out.push_back({prev_x, x, prev, e, pole_between});
        prev_x = x;
        prev = e;
        pole_between = false;
    }
    return out;
}

/// Refine one grid bracket into root(s), appended to `out`.
template <class F>
void refine_bracket(F&& eval, const ScanBracket& br, std::vector<ScanRoot>& out,
                    double xtol) {
    if (br.pole_between) {
        resolve_bracket(eval, br.a, br.b, br.ea, br.eb, out, xtol);
    } else if (br.eb.f == 0.0) {
        out.push_back({br.b, 0.0});
    } else {
        out.push_back(bisect_root(eval, br.a, br.b, br.ea.f, br.eb.f, xtol));
    }
}

/// Scan [lo, hi] on a uniform grid of `n` intervals and refine every sign
/// change. Roots are returned in ascending x, deduplicated (an exact zero
/// landing on a grid point would otherwise seed the same root twice).
template <class F>
std::vector<ScanRoot> scan_roots(F&& eval, double lo, double hi, long n,
                                 double xtol) {
    std::vector<ScanRoot> roots;
    for (const ScanBracket& br : scan_brackets(eval, lo, hi, n))
        refine_bracket(eval, br, roots, xtol);
    std::vector<ScanRoot> unique;
    for (const auto& r : roots) {
        if (unique.empty() || std::fabs(r.x - unique.back().x) > 4.0 * xtol)
            unique.push_back(r);
    }
    return unique;
}

/// Collect the `wanted` largest roots below `hi`, scanning downward. The
/// first segment reaches from min(start_floor, hi/2) up to hi; while too few
/// sign changes turn up, the floor halves and the newly uncovered segment is
/// scanned. Grid resolution per segment: step = min(1e-3, width/2000), at
/// most 20000 intervals. Only the topmost brackets are refined. Returns
/// descending roots (possibly fewer than `wanted` after 40 extensions).
template <class F>
std::vector<ScanRoot> descending_roots(F&& eval, double hi, double start_floor,
                                       int wanted, double xtol) {
    std::vector<ScanRoot> roots;
    if (!(hi > 0.0) || wanted < 1) return roots;
    double top = hi;
    double floor = std::min(start_floor, 0.5 * hi);
    if (!(floor > 0.0) || floor >= top) floor = 0.5 * top;
    for (int round = 0; round < 40; ++round) {
        double width = top - floor;
        double step = std::min(1e-3, width / 2000.0);
        long n = std::max(2000L, static_cast<long>(std::ceil(width / step)));
        n = std::min(n, 20000L);
        std::vector<ScanBracket> brs = scan_brackets(eval, floor, top, n);
        for (auto it = brs.rbegin(); it != brs.rend(); ++it) {
            if (static_cast<int>(roots.size()) >= wanted) break;
            std::vector<ScanRoot> found;
            refine_bracket(eval, *it, found, xtol);
            // Descending order within a bracket, dedup against segment edges.
            for (auto fit = found.rbegin(); fit != found.rend(); ++fit) {
                if (roots.empty() ||
                    std::fabs(fit->x - roots.back().x) > 4.0 * xtol)
                    roots.push_back(*fit);
            }
        }
        if (static_cast<int>(roots.size()) >= wanted) break;
        top = floor;
        floor = 0.5 * floor;
    }
    return roots;
}

}  // namespace nanoshell::detail
