#pragma once

#include <functional>

#include "rislink/complex_gamma.hpp"

namespace rislink {

struct QuadratureSpec {
    enum class Rule { adaptive_interval, fixed_node };
    Rule rule = Rule::adaptive_interval;
    int max_nodes = 400000;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
};

struct QuadResult {
    cplx value;
    double err;
};

// Integral of f over the whole real line.  Built for Mellin-Barnes sections:
// symmetric geometric segments [2^k, 2^(k+1)] are extended until three
// consecutive segments contribute below abs_tol*1e-3, each segment done with
// adaptive Gauss-Kronrod 7/15.  err is a sum of per-segment |K15-G7| gaps,
// conservative for analytic integrands.
QuadResult contour_integrate(const std::function<cplx(double)>& f, const QuadratureSpec& spec = {});

// Same machinery on a finite interval.
QuadResult integrate_interval(const std::function<cplx(double)>& f, double a, double b,
                              const QuadratureSpec& spec = {});

} // namespace rislink
