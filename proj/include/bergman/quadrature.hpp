#pragma once

// Adaptive quadrature used by the moment engine.
//
// 1-D: classic globally adaptive Gauss7/Kronrod15 with the worst panel split
// first. The panel error estimate is |K15 - G7|, which is conservative for
// the smooth and endpoint-algebraic integrands that show up here.
//
// n-D (n <= 3): integration of a monomial prod_j r_j^{p_j} over a radial
// region given by a strict indicator on radius vectors plus a bounding box.
// Every region integral in this library is such a monomial (volumes and
// moment integrands), and the restriction buys exactness: a cell that lies
// entirely inside the region integrates in closed form, and inside boundary
// cells the innermost coordinate integrates in closed form up to the located
// boundary height. All quadrature error therefore lives in boundary cells,
// along the outer coordinates only.
//
// The caller guarantees the region is monotone (downward closed: membership
// survives componentwise shrinking), so the min corner decides "outside" and
// the max corner decides "inside" exactly, and boundary heights are found by
// bisecting the indicator. Boundary cells integrate outer coordinates over
// their section window [lo, sup inside] rather than the full cell edge, so
// the integrand never clamps to zero inside the rule and stays as smooth as
// the section boundary, which for the catalog regions is analytic away from
// finitely many points. Boundary cells split along the first axis only;
// splitting a strip axis would plant the clamp kink of the height function
// inside every descendant and the rule would stall at low order.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "core.hpp"

namespace bergman {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    long evals = 0;
};

namespace gk {

// QUADPACK dqk15 constants; wg pairs with the odd-indexed Kronrod abscissae.
inline constexpr int NK = 15;
inline constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

// Fills the 15 abscissae of [a,b] in the order x0- ... x6-, mid, x6+ ... x0+.
inline void nodes(double a, double b, double* x) {
    const double c = 0.5 * (a + b), s = 0.5 * (b - a);
    for (int i = 0; i < 7; ++i) {
        x[i] = c - s * xgk[i];
        x[14 - i] = c + s * xgk[i];
    }
    x[7] = c;
}

// Kronrod and embedded Gauss sums from 15 samples laid out as in nodes().
inline void sums(const double* fx, double a, double b, double& fine, double& coarse) {
    const double s = 0.5 * (b - a);
    double k = wgk[7] * fx[7];
    double g = wg[3] * fx[7];
    for (int i = 0; i < 7; ++i) k += wgk[i] * (fx[i] + fx[14 - i]);
    for (int i = 0; i < 4; ++i) {
        int j = 2 * i + 1;  // Gauss points sit at the odd Kronrod indices
        if (j < 7) g += wg[i] * (fx[j] + fx[14 - j]);
    }
    fine = s * k;
    coarse = s * g;
}

template <class F>
void panel(F&& f, double a, double b, double& value, double& err, long& evals) {
    double x[NK], fx[NK];
    nodes(a, b, x);
    for (int i = 0; i < NK; ++i) fx[i] = f(x[i]);
    evals += NK;
    double coarse;
    sums(fx, a, b, value, coarse);
    err = std::abs(value - coarse);
}

}  // namespace gk

// Globally adaptive 1-D integral of f over [a,b]. Stops when the summed
// panel error estimate drops below max(abs_tol, rel_tol*|value|). On panel
// budget exhaustion throws quadrature_error, or returns the best estimate
// with its honest error when best_effort is set.
template <class F>
QuadResult integrate_gk(F&& f, double a, double b, double abs_tol, double rel_tol,
                        int max_panels = 8000, bool best_effort = false) {
    struct Seg {
        double a, b, value, err;
        long id;
    };
    auto worse = [](const Seg& p, const Seg& q) {
        if (p.err != q.err) return p.err < q.err;
        return p.id > q.id;  // deterministic tie break
    };
    std::priority_queue<Seg, std::vector<Seg>, decltype(worse)> heap(worse);

    QuadResult out;
    long next_id = 0;
    Seg root{a, b, 0, 0, next_id++};
    gk::panel(f, a, b, root.value, root.err, out.evals);
    double total = root.value, tot_err = root.err;
    heap.push(root);
    int panels = 1;

    auto tol = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };
    while (tot_err > tol() && panels < max_panels && !heap.empty()) {
        Seg s = heap.top();
        heap.pop();
        const double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b) continue;  // interval at rounding floor
        Seg l{s.a, mid, 0, 0, next_id++}, r{mid, s.b, 0, 0, next_id++};
        gk::panel(f, l.a, l.b, l.value, l.err, out.evals);
        gk::panel(f, r.a, r.b, r.value, r.err, out.evals);
        total += l.value + r.value - s.value;
        tot_err += l.err + r.err - s.err;
        heap.push(l);
        heap.push(r);
        panels++;
    }
    if (tot_err > tol() && !best_effort)
        throw quadrature_error("integrate_gk: tolerance not reached within panel budget (achieved " +
                               canonical_num(tot_err) + ")");
    out.value = total;
    out.abs_error = tot_err;
    return out;
}

using RVec = std::array<double, 4>;
using IVec = std::array<int, 4>;
using RegionIndicator = std::function<bool(const RVec&)>;

namespace detail_region {

struct Cell {
    RVec lo{}, hi{};
    int depth = 0;
    long id = 0;
    double value = 0, err = 0;
    bool boundary = false;
};

// sup{ r in [lo,hi] : column point with coord[dim]=r is inside }, assuming the
// indicator is monotone along the dim axis. Returns lo when the whole column
// is outside.
inline double column_height(const RegionIndicator& inside, RVec base, int dim, double lo,
                            double hi, long& evals) {
    base[dim] = hi;
    ++evals;
    if (inside(base)) return hi;
    base[dim] = lo;
    ++evals;
    if (!inside(base)) return lo;
    double a = lo, b = hi;
    for (int it = 0; it < 60 && b - a > 0.0; ++it) {
        double m = 0.5 * (a + b);
        base[dim] = m;
        ++evals;
        (inside(base) ? a : b) = m;
    }
    return 0.5 * (a + b);
}

// int_a^b x^p dx
inline double power_segment(int p, double a, double b) {
    return (ipow(b, p + 1) - ipow(a, p + 1)) / (p + 1);
}

}  // namespace detail_region

// Integral of the monomial prod_{j<n} r_j^{p_j} over
// { r in [lo,hi] box : inside(r) } for n in {1,2,3}; powers must be >= 0.
// The indicator must be strict and monotone (downward closed); this is
// asserted by the caller, not re-checked here. The refinement loop breaks
// early once the summed error estimate stops improving (the |K-G| roundoff
// floor); with best_effort the achieved error is returned, otherwise
// falling short of the tolerance throws quadrature_error.
inline QuadResult integrate_region(int n, const RVec& lo, const RVec& hi,
                                   const RegionIndicator& inside, const IVec& pow, double abs_tol,
                                   double rel_tol, int max_cells = 60000, int depth_cap = 40,
                                   bool best_effort = false) {
    using detail_region::Cell;
    using detail_region::column_height;
    using detail_region::power_segment;
    if (n < 1 || n > 3)
        throw std::invalid_argument("integrate_region: supported dimensions are 1..3");
    for (int j = 0; j < n; ++j)
        if (pow[j] < 0) throw std::invalid_argument("integrate_region: powers must be >= 0");

    QuadResult out;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    auto estimate = [&](Cell& c) {
        RVec maxc = c.hi, minc = c.lo;
        ++out.evals;
        if (!inside(minc)) {  // monotone: min corner outside => cell outside
            c.value = c.err = 0;
            c.boundary = false;
            return false;  // nothing to integrate
        }
        ++out.evals;
        if (inside(maxc)) {  // fully inside: closed form, no further refinement
            double v = 1.0;
            for (int j = 0; j < n; ++j) v *= power_segment(pow[j], c.lo[j], c.hi[j]);
            c.value = v;
            c.err = 8 * eps * std::abs(v);
            c.boundary = false;
            return true;
        }
        c.boundary = true;

        if (n == 1) {
            double h = column_height(inside, c.lo, 0, c.lo[0], c.hi[0], out.evals);
            c.value = power_segment(pow[0], c.lo[0], h);
            c.err = 8 * eps * std::abs(c.value);
            return true;
        }

        if (n == 2) {
            // window in x, closed-form columns in y
            const double w0 = column_height(inside, c.lo, 0, c.lo[0], c.hi[0], out.evals);
            if (w0 <= c.lo[0]) {
                c.value = c.err = 0;
                return true;
            }
            double x[gk::NK], colv[gk::NK];
            gk::nodes(c.lo[0], w0, x);
            for (int i = 0; i < gk::NK; ++i) {
                RVec base = c.lo;
                base[0] = x[i];
                double h = column_height(inside, base, 1, c.lo[1], c.hi[1], out.evals);
                colv[i] = ipow(x[i], pow[0]) * power_segment(pow[1], c.lo[1], h);
            }
            double fine, coarse;
            gk::sums(colv, c.lo[0], w0, fine, coarse);
            c.value = fine;
            c.err = std::abs(fine - coarse) + 8 * eps * std::abs(fine);
            return true;
        }

        // n == 3: window in x0; per node an adaptive windowed integral in x1
        // of closed-form x2 columns.
        const double w0 = column_height(inside, c.lo, 0, c.lo[0], c.hi[0], out.evals);
        if (w0 <= c.lo[0]) {
            c.value = c.err = 0;
            return true;
        }
        double x0[gk::NK], rowv[gk::NK], rowe[gk::NK];
        gk::nodes(c.lo[0], w0, x0);
        for (int i = 0; i < gk::NK; ++i) {
            RVec base = c.lo;
            base[0] = x0[i];
            const double w1 = column_height(inside, base, 1, c.lo[1], c.hi[1], out.evals);
            if (w1 <= c.lo[1]) {
                rowv[i] = rowe[i] = 0;
                continue;
            }
            auto g = [&](double x1) {
                RVec b2 = base;
                b2[1] = x1;
                double h = column_height(inside, b2, 2, c.lo[2], c.hi[2], out.evals);
                return ipow(x1, pow[1]) * power_segment(pow[2], c.lo[2], h);
            };
            QuadResult q = integrate_gk(g, c.lo[1], w1, 0.0, 1e-13, 64, /*best_effort=*/true);
            rowv[i] = ipow(x0[i], pow[0]) * q.value;
            rowe[i] = ipow(x0[i], pow[0]) * q.abs_error;
        }
        double fine, coarse;
        gk::sums(rowv, c.lo[0], w0, fine, coarse);
        double carried = 0;
        for (int i = 0; i < gk::NK; ++i) carried += gk::wgk[i < 8 ? i : 14 - i] * rowe[i];
        carried *= 0.5 * (w0 - c.lo[0]);
        c.value = fine;
        c.err = std::abs(fine - coarse) + carried + 8 * eps * std::abs(fine);
        return true;
    };

    auto worse = [](const Cell& p, const Cell& q) {
        if (p.err != q.err) return p.err < q.err;
        return p.id > q.id;
    };
    std::priority_queue<Cell, std::vector<Cell>, decltype(worse)> heap(worse);

    long next_id = 0;
    Cell root;
    root.lo = lo;
    root.hi = hi;
    root.id = next_id++;
    double total = 0, tot_err = 0;
    if (estimate(root)) {
        total = root.value;
        tot_err = root.err;
        if (root.boundary) heap.push(root);
    }
    int cells = 1;
    auto tol = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };

    // Popped cells that cannot be split keep their contribution in total and
    // tot_err; they just leave the refinement queue. The summed error must
    // improve by at least 2% per stall_window splits, otherwise the
    // estimator has hit its roundoff floor and more splitting is wasted
    // work. Genuine refinement, even when spread over many comparable
    // cells, clears that bar easily; a floored estimate oscillates.
    const int stall_window = 256;
    double stall_mark = tot_err;
    int splits = 0;
    while (tot_err > tol() && !heap.empty() && cells < max_cells) {
        Cell c = heap.top();
        heap.pop();
        if (c.depth >= depth_cap) continue;
        // boundary cells split along the window axis only (see header)
        const double mid = 0.5 * (c.lo[0] + c.hi[0]);
        if (mid <= c.lo[0] || mid >= c.hi[0]) continue;
        Cell a = c, b = c;
        a.hi[0] = mid;
        b.lo[0] = mid;
        a.depth = b.depth = c.depth + 1;
        a.id = next_id++;
        b.id = next_id++;
        total -= c.value;
        tot_err -= c.err;
        for (Cell* ch : {&a, &b}) {
            if (estimate(*ch)) {
                total += ch->value;
                tot_err += ch->err;
                if (ch->boundary) heap.push(*ch);
            }
        }
        cells += 2;
        if (++splits % stall_window == 0) {
            if (tot_err > 0.98 * stall_mark) break;
            stall_mark = tot_err;
        }
    }
    if (tot_err > std::max(abs_tol, rel_tol * std::abs(total)) && !best_effort)
        throw quadrature_error(
            "integrate_region: tolerance not reached within cell budget (achieved " +
            canonical_num(tot_err) + ")");
    out.value = total;
    out.abs_error = tot_err;
    return out;
}

}  // namespace bergman
