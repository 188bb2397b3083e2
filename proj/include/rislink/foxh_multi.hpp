#pragma once

#include <cstdint>
#include <vector>

#include "rislink/foxh.hpp"

namespace rislink {

// Outer gamma factor coupling all integration variables:
//   upper row: Gamma(1 - val - sum_i coefs[i] u_i)
//   lower row: Gamma(val + sum_i coefs[i] u_i)
// with the usual numerator/denominator split (first outer_n upper rows and
// first outer_m lower rows are numerators).  coefs may be negative.
struct OuterRow {
    double val;
    std::vector<double> coefs;
};

// scale/(2*pi*i)^N * Int prod_i Theta_i(u_i) (arg_scales[i]*x_i)^{-u_i}
//                        * OuterTheta(u_1..u_N) du
// blocks[i] supplies Theta_i through its pair lists; block kappa/c must stay
// at their defaults, prefactors belong in scale and arg_scales.
struct MultiFoxHParams {
    int outer_n = 0;
    int outer_m = 0;
    std::vector<OuterRow> outer_upper;
    std::vector<OuterRow> outer_lower;
    std::vector<FoxHParams> blocks;
    double scale = 1.0;
    std::vector<double> arg_scales;
};

enum class MultiMethod { nested_quadrature, randomized_contour };

struct MultiEvalResult {
    double value;
    double err;
    MultiMethod method;
};

// N <= 3: trapezoidal lattice on the shifted contours, evaluated through a
// chain of 1-D convolutions when every outer row has uniform coefficients
// (the coupling then depends on u only through sum_i u_i).  4 <= N <= 8:
// randomized quasi-Monte Carlo on the same contours.  N > 8: DimensionLimit.
MultiEvalResult eval_multi(const MultiFoxHParams& p, const std::vector<double>& args,
                           const QuadratureSpec& spec = {}, uint64_t seed = 0x9e3779b97f4a7c15ull);

// N == 1 only (ArityError otherwise): fold the outer rows into the block and
// cancel identical factors, producing a single-variable form for foxh::eval.
FoxHParams collapse_n1(const MultiFoxHParams& p);

namespace detail {

// Shared contour/lattice geometry so the reference path and the production
// path integrate the exact same sum.
struct LatticePlan {
    std::vector<double> gammas; // per-dimension abscissae
    double h;                   // common imaginary-axis step
    std::vector<int> half_n;    // per-dimension one-sided truncation count
};

LatticePlan plan_lattice(const MultiFoxHParams& p, const std::vector<double>& args,
                         double tail_log_drop);

// Production evaluator: per-dimension sample arrays combined by convolution,
// coupling applied once on the lattice of contour sums.  OpenMP inside.
double eval_on_lattice(const MultiFoxHParams& p, const std::vector<double>& args,
                       const LatticePlan& plan);

// Literal nested sum over the full N-dimensional lattice, single threaded.
// O(prod K_i); testing and benchmarking only.
double eval_on_lattice_nested(const MultiFoxHParams& p, const std::vector<double>& args,
                              const LatticePlan& plan);

} // namespace detail

} // namespace rislink
