#include "rislink/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "rislink/errors.hpp"

namespace rislink {

namespace {

// Kronrod 15 nodes on [0,1] side (symmetric); even indices are the Gauss 7
// nodes.
constexpr double kXk[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993944,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
constexpr double kWk[8] = {
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299786,
    0.0229353220105292,
};
constexpr double kWg[4] = {
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892767,
    0.1294849661688697,
};

struct PanelResult {
    cplx k15;
    double err; // |K15 - G7|
};

PanelResult gk_panel(const std::function<cplx(double)>& f, double a, double b, int& nodes)
{
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    cplx fk = kWk[0] * f(mid);
    cplx fg = kWg[0] * f(mid);
    for (int i = 1; i < 8; ++i) {
        cplx lo = f(mid - half * kXk[i]);
        cplx hi = f(mid + half * kXk[i]);
        fk += kWk[i] * (lo + hi);
        if (i % 2 == 0)
            fg += kWg[i / 2] * (lo + hi);
    }
    nodes += 15;
    return {half * fk, std::abs(half * (fk - fg))};
}

struct Segment {
    double a, b;
    cplx value;
    double err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

// Adaptive bisection of [a,b]; error target split between absolute and
// relative against the running total.
PanelResult adaptive_interval(const std::function<cplx(double)>& f, double a, double b,
                              const QuadratureSpec& spec, int& nodes)
{
    std::priority_queue<Segment> work;
    PanelResult first = gk_panel(f, a, b, nodes);
    if (spec.rule == QuadratureSpec::Rule::fixed_node)
        return first;
    work.push({a, b, first.k15, first.err});
    cplx total = first.k15;
    double err_total = first.err;
    while (true) {
        double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (err_total <= target)
            break;
        if (nodes >= spec.max_nodes)
            break; // caller decides whether the residual error is acceptable
        Segment top = work.top();
        work.pop();
        double mid = 0.5 * (top.a + top.b);
        if (mid <= top.a || mid >= top.b) { // interval exhausted double precision
            work.push({top.a, top.b, top.value, 0.0});
            err_total -= top.err;
            continue;
        }
        PanelResult left = gk_panel(f, top.a, mid, nodes);
        PanelResult right = gk_panel(f, mid, top.b, nodes);
        total += left.k15 + right.k15 - top.value;
        err_total += left.err + right.err - top.err;
        work.push({top.a, mid, left.k15, left.err});
        work.push({mid, top.b, right.k15, right.err});
    }
    return {total, err_total};
}

} // namespace

QuadResult integrate_interval(const std::function<cplx(double)>& f, double a, double b,
                              const QuadratureSpec& spec)
{
    int nodes = 0;
    PanelResult r = adaptive_interval(f, a, b, spec, nodes);
    double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(r.k15));
    if (nodes >= spec.max_nodes && r.err > 100.0 * target)
        throw NonConvergence("interval quadrature stalled at the node budget");
    return {r.k15, r.err};
}

QuadResult contour_integrate(const std::function<cplx(double)>& f, const QuadratureSpec& spec)
{
    int nodes = 0;
    cplx total = 0.0;
    double err_total = 0.0;

    // Mirrored geometric segments; stop a side once three consecutive
    // segments fall below the extension cutoff.
    for (int side = 0; side < 2; ++side) {
        double sign = side == 0 ? 1.0 : -1.0;
        double lo = 0.0, hi = 1.0;
        int quiet = 0;
        for (int seg = 0; seg < 64; ++seg) {
            double a = sign * lo, b = sign * hi;
            if (side == 1)
                std::swap(a, b);
            PanelResult r = adaptive_interval(f, a, b, spec, nodes);
            total += r.k15;
            err_total += r.err;
            double cutoff = std::max(spec.abs_tol * 1e-3,
                                     spec.rel_tol * 1e-3 * std::abs(total));
            quiet = std::abs(r.k15) + r.err < cutoff ? quiet + 1 : 0;
            if (quiet >= 3)
                break;
            if (nodes >= spec.max_nodes)
                throw NonConvergence("contour integral tail does not settle");
            lo = hi;
            hi *= 2.0;
        }
        if (quiet < 3)
            throw NonConvergence("contour integral tail does not settle");
    }
    return {total, err_total};
}

} // namespace rislink
