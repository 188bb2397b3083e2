#pragma once

#include <string>
#include <vector>

#include "rislink/fading.hpp"
#include "rislink/foxh_multi.hpp"

namespace rislink {

// One surface-assisted link with phase-aligned elements: received amplitude
// is S = sum_i h_i*g_i and the instantaneous SNR is avg_snr * S^2.  avg_snr
// is linear (callers convert dB at the interface).
struct RisLink {
    int n_elements = 1;
    std::vector<HopPair> hops; // size n_elements
    double avg_snr = 1.0;
};

struct OutageQuery {
    double threshold_bits; // rate threshold, bits/s/Hz
};

// Normalized threshold (2^r - 1)/avg_snr; outage is P(S < sqrt of this).
double normalized_threshold(const RisLink& link, const OutageQuery& q);

// P(log2(1 + avg_snr*S^2) < threshold).  N <= 3 lattice, 4..8 randomized
// contour, N > 8 throws DimensionLimit.
MultiEvalResult outage_exact(const RisLink& link, const OutageQuery& q);

// Single-variable route for one element; ArityError when n_elements != 1.
EvalResult outage_n1(const RisLink& link, const OutageQuery& q);

// Arithmetic-geometric mean bound, single-variable at any N; equals the
// exact value when N == 1.
EvalResult outage_upper(const RisLink& link, const OutageQuery& q);

struct AsymptoticOutage {
    double coefficient;
    double snr_exponent;          // on the normalized threshold
    int log_power;
    std::string validity;         // "simple-poles" or "iid-power-log"
};

// High-SNR law coefficient*t^snr_exponent*ln(1/t)^log_power with t the
// normalized threshold.  Distinct per-element dominant poles use the product
// residue; fully iid links with coincident poles use the power-log branch;
// anything mixed throws HigherOrderPole.
AsymptoticOutage outage_asymptotic(const RisLink& link);

double asymptotic_value(const AsymptoticOutage& a, double t);

// Slope of the outage curve at high SNR; total over elements, never throws.
double diversity_order(const RisLink& link);

// Value of the quadratic-mean lower bound's leading term at this query.
double outage_lower_asymptotic(const RisLink& link, const OutageQuery& q);

// E[log2(1 + avg_snr*S^2)] via the capacity-form multivariate H at arguments
// c_i/sqrt(avg_snr): expanding prod(1+R_i) gives one lattice/QMC evaluation
// per subset of elements, signs alternating with subset size; iid links
// group the subsets binomially.
MultiEvalResult capacity_exact(const RisLink& link);

// Single-variable capacity for one element; ArityError when n_elements != 1.
EvalResult capacity_n1(const RisLink& link);

// Jensen/AM-GM lower bound, single H evaluation at any N >= 2 (ArityError
// below; at N == 1 the bound degenerates to the exact value).
EvalResult capacity_lower(const RisLink& link);

namespace detail {

// prod_i kappa_h*kappa_g/c_i, the prefactor shared by every link metric.
double link_prefactor(const RisLink& link);

// Per-element CDF-transform block: Gamma(-u) row plus the product-pdf pairs
// shifted by one coefficient unit.  Strip is (-zeta_i, 0).
FoxHParams outage_block(const HopPair& hop);

// Capacity block after rewriting Gamma(-u) = -Gamma(u)Gamma(1-u)/Gamma(1+u);
// carries sign (-1) per element, strip (0, min(1, upper edges)).
FoxHParams capacity_block(const HopPair& hop);

MultiFoxHParams outage_form(const RisLink& link);

// Capacity form for the element subset `idx`.
MultiFoxHParams capacity_form(const RisLink& link, const std::vector<int>& idx);

double element_zeta(const HopPair& hop); // min over product pairs of xi/Xi

bool iid_link(const RisLink& link);

// All elements' shifted pairs in one single-variable list (AM-GM bound
// forms) and the matching product of argument scales.
FoxHParams merged_bound_pairs(const RisLink& link);
double arg_scale_product(const RisLink& link);

} // namespace detail

} // namespace rislink
