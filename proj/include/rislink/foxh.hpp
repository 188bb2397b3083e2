#pragma once

#include <string>
#include <vector>

#include "rislink/quadrature.hpp"

namespace rislink {

// One gamma factor Gamma(val + coef*s) resp. Gamma(1 - val - coef*s); coef > 0.
struct GammaPair {
    double val;
    double coef;
};

// kappa * H^{m,n}_{p,q}[ c*x | upper; lower ] with the Mellin-Barnes kernel
//
//   Theta(s) = prod_{j<m} G(b_j + B_j s) * prod_{j<n} G(1 - a_j - A_j s)
//            / [ prod_{j>=n} G(a_j + A_j s) * prod_{j>=m} G(1 - b_j - B_j s) ]
//
// and value = kappa/(2*pi*i) * Int Theta(s) (c*x)^{-s} ds along a vertical
// contour inside the fundamental strip.  upper holds the (a_j, A_j) pairs
// (first n are numerator factors), lower the (b_j, B_j) pairs (first m are
// numerator factors).
struct FoxHParams {
    int m = 0;
    int n = 0;
    double kappa = 1.0;
    double c = 1.0;
    std::vector<GammaPair> upper;
    std::vector<GammaPair> lower;
};

struct ValidationReport {
    bool valid = false;
    bool strip_empty = false;
    bool coincident_poles = false; // dominant numerator pole is not simple
    double strip_lo = 0.0;         // max_j(-b_j/B_j) over numerator lower pairs
    double strip_hi = 0.0;         // min_j((1-a_j)/A_j) over numerator upper pairs
    double decay_rate = 0.0;       // contour decay exponent, units of pi/2 per |Im s|
    std::string reason;
};

ValidationReport validate(const FoxHParams& p);

struct EvalResult {
    double value;
    double err;
};

// Contour evaluation at x > 0.  The abscissa is placed at the minimizer of
// log|Theta(g) (c x)^{-g}| across the strip, which keeps the integrand peak
// near 1 and the result well conditioned at both ends of an SNR sweep.
// Throws std::invalid_argument when validate() fails, PoleOnContour if the
// abscissa cannot be separated from a pole, NonConvergence from quadrature.
EvalResult eval(const FoxHParams& p, double x, const QuadratureSpec& spec = {});

// Leading small-x behaviour: value ~ coefficient * x^dominant_exponent *
// ln(1/x)^log_power.  pole_order is the multiplicity of the dominant pole.
struct ResidueExpansion {
    double dominant_exponent;
    double coefficient;
    int log_power;
    int pole_order;
};

// Throws HigherOrderPole when the dominant pole has order > 2.
ResidueExpansion asymptotic(const FoxHParams& p);

namespace detail {

// log Theta(s); throws PoleError if s sits on a gamma pole.
cplx log_theta(const FoxHParams& p, cplx s);

// Residue machinery without the order cap; metrics uses orders > 2 for the
// iid power-log branch.
ResidueExpansion residue_leading(const FoxHParams& p);

// log|Gamma(x)| and its sign for real x away from poles.
struct SignedLogGamma {
    double log_abs;
    double sign;
};
SignedLogGamma log_gamma_signed(double x);

} // namespace detail

} // namespace rislink
