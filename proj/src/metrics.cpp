#include "rislink/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "rislink/errors.hpp"

namespace rislink {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212146;

void check_link(const RisLink& link)
{
    if (link.n_elements < 1 || static_cast<int>(link.hops.size()) != link.n_elements)
        throw ParamError("hops must hold one entry per element");
    if (!(link.avg_snr > 0.0))
        throw ParamError("avg_snr must be positive (linear scale)");
    for (const auto& hop : link.hops) {
        check_params(hop.h);
        check_params(hop.g);
    }
}

// Shift every pair by one coefficient unit: the Laplace/CDF step replaces
// Theta(s) at s = u with the product-pdf pairs moved from (v, V) to
// (v + V, V).
std::vector<GammaPair> shifted(const std::vector<GammaPair>& pairs)
{
    std::vector<GammaPair> out;
    out.reserve(pairs.size());
    for (const auto& [v, V] : pairs)
        out.push_back({v + V, V});
    return out;
}

FoxHParams shifted_product(const HopPair& hop)
{
    FoxHParams prod = product_params(hop);
    prod.upper = shifted(prod.upper);
    prod.lower = shifted(prod.lower);
    prod.kappa = 1.0;
    prod.c = 1.0;
    return prod;
}

int binom(int n, int k)
{
    double v = std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                                   std::lgamma(n - k + 1.0)));
    return static_cast<int>(v);
}

bool pairs_equal(const FoxHParams& a, const FoxHParams& b)
{
    if (a.m != b.m || a.n != b.n || a.upper.size() != b.upper.size() ||
        a.lower.size() != b.lower.size())
        return false;
    if (std::abs(a.kappa - b.kappa) > 1e-12 || std::abs(a.c - b.c) > 1e-12)
        return false;
    for (size_t i = 0; i < a.upper.size(); ++i)
        if (std::abs(a.upper[i].val - b.upper[i].val) > 1e-12 ||
            std::abs(a.upper[i].coef - b.upper[i].coef) > 1e-12)
            return false;
    for (size_t i = 0; i < a.lower.size(); ++i)
        if (std::abs(a.lower[i].val - b.lower[i].val) > 1e-12 ||
            std::abs(a.lower[i].coef - b.lower[i].coef) > 1e-12)
            return false;
    return true;
}

} // namespace

namespace detail {

double link_prefactor(const RisLink& link)
{
    double tau = 1.0;
    for (const auto& hop : link.hops) {
        FoxHParams prod = product_params(hop);
        tau *= prod.kappa / prod.c;
    }
    return tau;
}

FoxHParams outage_block(const HopPair& hop)
{
    FoxHParams b = shifted_product(hop);
    FoxHParams out;
    out.n = b.n + 1;
    out.m = b.m;
    out.upper.push_back({1.0, 1.0}); // Gamma(-u)
    out.upper.insert(out.upper.end(), b.upper.begin(), b.upper.end());
    out.lower = b.lower;
    return out;
}

FoxHParams capacity_block(const HopPair& hop)
{
    // -Gamma(-u) = Gamma(u)Gamma(1-u)/Gamma(1+u); the sign lives in the
    // subset prefactor so the block keeps positive-argument gammas and a
    // (0, min(1, .)) strip.
    FoxHParams b = shifted_product(hop);
    FoxHParams out;
    out.n = b.n + 1;
    out.m = b.m + 1;
    out.upper.push_back({0.0, 1.0}); // Gamma(1-u)
    out.upper.insert(out.upper.end(), b.upper.begin(), b.upper.begin() + b.n);
    out.upper.insert(out.upper.end(), b.upper.begin() + b.n, b.upper.end());
    out.upper.push_back({1.0, 1.0}); // 1/Gamma(1+u)
    out.lower.push_back({0.0, 1.0}); // Gamma(u)
    out.lower.insert(out.lower.end(), b.lower.begin(), b.lower.end());
    return out;
}

MultiFoxHParams outage_form(const RisLink& link)
{
    size_t n = link.hops.size();
    MultiFoxHParams p;
    for (const auto& hop : link.hops) {
        p.blocks.push_back(outage_block(hop));
        p.arg_scales.push_back(product_params(hop).c);
    }
    p.outer_lower.push_back({0.0, std::vector<double>(n, 1.0)}); // 1/Gamma(1 - sum u)
    p.outer_m = 0;
    p.scale = link_prefactor(link);
    return p;
}

MultiFoxHParams capacity_form(const RisLink& link, const std::vector<int>& idx)
{
    size_t k = idx.size();
    MultiFoxHParams p;
    double tau_s = 1.0;
    for (int i : idx) {
        FoxHParams prod = product_params(link.hops[i]);
        p.blocks.push_back(capacity_block(link.hops[i]));
        p.arg_scales.push_back(prod.c);
        tau_s *= prod.kappa / prod.c;
    }
    std::vector<double> half(k, -0.5);
    p.outer_upper.push_back({1.0, half}); // Gamma(w/2)
    p.outer_n = 1;
    p.outer_lower.push_back({1.0, half});                        // Gamma(1 - w/2)
    p.outer_lower.push_back({0.0, std::vector<double>(k, 1.0)}); // 1/Gamma(1 - w)
    p.outer_m = 1;
    p.scale = (k % 2 == 1 ? 1.0 : -1.0) * tau_s / kLn2;
    return p;
}

double element_zeta(const HopPair& hop)
{
    FoxHParams b = shifted_product(hop);
    double z = 1e300;
    for (int j = 0; j < b.m; ++j)
        z = std::min(z, b.lower[j].val / b.lower[j].coef);
    return z;
}

bool iid_link(const RisLink& link)
{
    FoxHParams first = product_params(link.hops[0]);
    for (size_t i = 1; i < link.hops.size(); ++i)
        if (!pairs_equal(first, product_params(link.hops[i])))
            return false;
    return true;
}

// Merged single-variable bound pairs: all elements' shifted uppers/lowers in
// one list, numerators first.
FoxHParams merged_bound_pairs(const RisLink& link)
{
    FoxHParams out;
    std::vector<GammaPair> ud, ld;
    for (const auto& hop : link.hops) {
        FoxHParams b = shifted_product(hop);
        out.upper.insert(out.upper.end(), b.upper.begin(), b.upper.begin() + b.n);
        ud.insert(ud.end(), b.upper.begin() + b.n, b.upper.end());
        out.lower.insert(out.lower.end(), b.lower.begin(), b.lower.begin() + b.m);
        ld.insert(ld.end(), b.lower.begin() + b.m, b.lower.end());
        out.n += b.n;
        out.m += b.m;
    }
    out.upper.insert(out.upper.end(), ud.begin(), ud.end());
    out.lower.insert(out.lower.end(), ld.begin(), ld.end());
    return out;
}

double arg_scale_product(const RisLink& link)
{
    double c = 1.0;
    for (const auto& hop : link.hops)
        c *= product_params(hop).c;
    return c;
}

} // namespace detail

double normalized_threshold(const RisLink& link, const OutageQuery& q)
{
    check_link(link);
    return (std::exp2(q.threshold_bits) - 1.0) / link.avg_snr;
}

MultiEvalResult outage_exact(const RisLink& link, const OutageQuery& q)
{
    double rho_t = normalized_threshold(link, q);
    if (rho_t == 0.0)
        return {0.0, 0.0, MultiMethod::nested_quadrature};
    MultiFoxHParams p = detail::outage_form(link);
    return eval_multi(p, std::vector<double>(link.hops.size(), std::sqrt(rho_t)));
}

EvalResult outage_n1(const RisLink& link, const OutageQuery& q)
{
    if (link.n_elements != 1)
        throw ArityError("outage_n1 needs exactly one element");
    double rho_t = normalized_threshold(link, q);
    if (rho_t == 0.0)
        return {0.0, 0.0};
    FoxHParams b = shifted_product(link.hops[0]);
    FoxHParams p;
    p.kappa = detail::link_prefactor(link);
    p.c = product_params(link.hops[0]).c;
    p.n = b.n + 1;
    p.m = b.m;
    p.upper.push_back({1.0, 1.0});
    p.upper.insert(p.upper.end(), b.upper.begin(), b.upper.end());
    p.lower = b.lower;
    p.lower.push_back({0.0, 1.0}); // denominator 1/Gamma(1-u)
    return eval(p, std::sqrt(rho_t));
}

EvalResult outage_upper(const RisLink& link, const OutageQuery& q)
{
    double rho_t = normalized_threshold(link, q);
    if (rho_t == 0.0)
        return {0.0, 0.0};
    int n = link.n_elements;
    FoxHParams p = detail::merged_bound_pairs(link);
    p.upper.insert(p.upper.begin(), {1.0, 1.0});
    p.n += 1;
    p.lower.push_back({0.0, 1.0});
    p.kappa = detail::link_prefactor(link);
    p.c = detail::arg_scale_product(link);
    double x = std::pow(std::sqrt(rho_t) / n, n);
    return eval(p, x);
}

AsymptoticOutage outage_asymptotic(const RisLink& link)
{
    check_link(link);
    double tau = detail::link_prefactor(link);

    std::vector<ResidueExpansion> res;
    bool all_simple = true;
    for (const auto& hop : link.hops) {
        FoxHParams block = detail::outage_block(hop);
        block.c = product_params(hop).c;
        res.push_back(detail::residue_leading(block));
        all_simple = all_simple && res.back().pole_order == 1;
    }
    if (!all_simple && !detail::iid_link(link))
        throw HigherOrderPole("coincident pole ladders on a non-identical link");

    // Laplace-level composition of the per-element leading terms: exponents
    // and log powers add, coefficients multiply through the Gamma chain.
    // Substituting y = sqrt(t) halves each log factor.
    double zeta_sum = 0.0, coef = tau;
    int logs = 0;
    for (const auto& r : res) {
        if (r.pole_order > 2)
            throw HigherOrderPole("per-element ladder order exceeds 2");
        zeta_sum += r.dominant_exponent;
        coef *= r.coefficient;
        logs += r.log_power;
    }
    coef /= std::tgamma(1.0 + zeta_sum) * std::pow(2.0, logs);
    return {coef, zeta_sum / 2.0, logs, all_simple ? "simple-poles" : "iid-power-log"};
}

double asymptotic_value(const AsymptoticOutage& a, double t)
{
    return a.coefficient * std::pow(t, a.snr_exponent) *
           std::pow(std::log(1.0 / t), a.log_power);
}

double diversity_order(const RisLink& link)
{
    check_link(link);
    double d = 0.0;
    for (const auto& hop : link.hops)
        d += detail::element_zeta(hop) / 2.0;
    return d;
}

double outage_lower_asymptotic(const RisLink& link, const OutageQuery& q)
{
    double rho_t = normalized_threshold(link, q);
    int n = link.n_elements;
    double y = rho_t / n;

    // Squared-amplitude route: P(sum X_i^2 < rho_t/N) evaluated by residues.
    // Squaring doubles every pair coefficient and squares the argument
    // scale; the prefactor stays tau.
    double zeta_sum = 0.0, coef = detail::link_prefactor(link);
    std::vector<double> per_dim_log;
    for (const auto& hop : link.hops) {
        FoxHParams b = shifted_product(hop);
        for (auto& g : b.upper)
            g.coef *= 2.0;
        for (auto& g : b.lower)
            g.coef *= 2.0;
        FoxHParams block;
        block.n = b.n + 1;
        block.m = b.m;
        block.upper.push_back({1.0, 1.0});
        block.upper.insert(block.upper.end(), b.upper.begin(), b.upper.end());
        block.lower = b.lower;
        double c2 = product_params(hop).c;
        c2 *= c2;
        block.c = c2;
        ResidueExpansion r = detail::residue_leading(block);
        if (r.pole_order > 2)
            throw HigherOrderPole("squared-variable ladder order exceeds 2");
        zeta_sum += r.dominant_exponent;
        coef *= r.coefficient;
        if (r.log_power > 0)
            per_dim_log.push_back(std::log(1.0 / (c2 * y)));
    }
    coef /= std::tgamma(1.0 + zeta_sum);
    double v = coef * std::pow(y, zeta_sum);
    for (double lg : per_dim_log)
        v *= lg;
    return v;
}

MultiEvalResult capacity_exact(const RisLink& link)
{
    check_link(link);
    int n = link.n_elements;
    if (n > 8)
        throw DimensionLimit("capacity subsets exceed eight coupled contours");
    double x = 1.0 / std::sqrt(link.avg_snr);

    double value = 0.0, err = 0.0;
    MultiMethod method = MultiMethod::nested_quadrature;

    if (detail::iid_link(link)) {
        for (int k = 1; k <= n; ++k) {
            std::vector<int> idx(k);
            for (int i = 0; i < k; ++i)
                idx[i] = i;
            MultiEvalResult r =
                eval_multi(detail::capacity_form(link, idx), std::vector<double>(k, x));
            double c = binom(n, k);
            value += c * r.value;
            err += c * r.err;
            if (r.method == MultiMethod::randomized_contour)
                method = r.method;
        }
        return {value, err, method};
    }

    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                idx.push_back(i);
        MultiEvalResult r = eval_multi(detail::capacity_form(link, idx),
                                       std::vector<double>(idx.size(), x));
        value += r.value;
        err += r.err;
        if (r.method == MultiMethod::randomized_contour)
            method = r.method;
    }
    return {value, err, method};
}

EvalResult capacity_n1(const RisLink& link)
{
    check_link(link);
    if (link.n_elements != 1)
        throw ArityError("capacity_n1 needs exactly one element");
    FoxHParams p = collapse_n1(detail::capacity_form(link, {0}));
    return eval(p, 1.0 / std::sqrt(link.avg_snr));
}

EvalResult capacity_lower(const RisLink& link)
{
    check_link(link);
    int n = link.n_elements;
    if (n < 2)
        throw ArityError("capacity_lower is defined for two or more elements");
    double half_n = 0.5 * n;

    FoxHParams p = detail::merged_bound_pairs(link);
    p.upper.insert(p.upper.begin(), {0.0, half_n}); // Gamma(1 - N/2 u)
    p.n += 1;
    p.upper.push_back({1.0, 1.0});  // 1/Gamma(1 + u)
    p.lower.push_back({0.0, 1.0});    // Gamma(u)
    p.lower.push_back({0.0, half_n}); // Gamma(N/2 u)
    p.m += 2;
    // numerator lowers stay in front
    std::rotate(p.lower.begin(), p.lower.end() - 2, p.lower.end());
    p.kappa = detail::link_prefactor(link) / kLn2;
    p.c = detail::arg_scale_product(link);
    double x = std::pow(n * std::sqrt(link.avg_snr), -n);
    return eval(p, x);
}

} // namespace rislink
