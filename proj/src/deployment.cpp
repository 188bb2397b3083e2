#include "rislink/deployment.hpp"

#include <cmath>
#include <vector>

#include "rislink/errors.hpp"

namespace rislink {

namespace {

void check_scene(const DeploymentScene& scene)
{
    if (scene.m_ris < 1)
        throw ParamError("deployment needs at least one surface");
    if (!(scene.radius > 0.0) || !(scene.bs_distance > 0.0) || !(scene.pathloss_exp > 0.0))
        throw ParamError("bad deployment geometry");
    (void)normalized_threshold(scene.link_template, {0.0});
}

double binom_real(int n, int k)
{
    return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(n - k + 1.0)));
}

// Distance-power factor entering every element argument: sqrt of the
// far-field path loss at the disc edge.
double edge_gain(const DeploymentScene& scene)
{
    return std::pow(scene.bs_distance * scene.radius, 0.5 * scene.pathloss_exp);
}

} // namespace

double nearest_pdf(double x, const DeploymentScene& scene)
{
    check_scene(scene);
    if (!(x > 0.0) || !(x < scene.radius))
        throw DomainError("nearest-surface distance outside (0, radius)");
    double u = x / scene.radius;
    return 2.0 * scene.m_ris / x * std::pow(1.0 - u * u, scene.m_ris - 1) * u * u;
}

MultiEvalResult spatial_outage(const DeploymentScene& scene, const OutageQuery& q)
{
    check_scene(scene);
    double rho_t = normalized_threshold(scene.link_template, q);
    if (rho_t == 0.0)
        return {0.0, 0.0, MultiMethod::nested_quadrature};
    const RisLink& link = scene.link_template;
    size_t n = link.hops.size();
    int m = scene.m_ris;
    double alpha = scene.pathloss_exp;

    MultiFoxHParams base = detail::outage_form(link);
    std::vector<double> args(n, std::sqrt(rho_t) * edge_gain(scene));

    // Distance average: 2M * sum_k binom(M-1,k) (-1)^k / (2+2k - alpha/2 w)
    // folded into the coupling row set, one evaluation per k.
    double value = 0.0, comp = 0.0, gross = 0.0, err = 0.0;
    MultiMethod method = MultiMethod::nested_quadrature;
    for (int k = 0; k < m; ++k) {
        MultiFoxHParams p = base;
        p.outer_upper.push_back({-1.0 - 2.0 * k, std::vector<double>(n, 0.5 * alpha)});
        p.outer_n = 1;
        p.outer_lower.push_back({-2.0 - 2.0 * k, std::vector<double>(n, 0.5 * alpha)});
        MultiEvalResult r = eval_multi(p, args);
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        double term = 2.0 * m * binom_real(m - 1, k) * sign * r.value;
        err += 2.0 * m * binom_real(m - 1, k) * r.err;
        gross += std::abs(term);
        // Kahan: the binomial terms alternate and grow with M
        double y = term - comp;
        double t = value + y;
        comp = (t - value) - y;
        value = t;
        if (r.method == MultiMethod::randomized_contour)
            method = r.method;
    }
    if (gross > 0.0 && std::abs(value) > 0.0 &&
        std::log10(gross / std::abs(value)) > 6.0)
        throw AlternatingSumLoss("binomial cancellation past six digits");
    return {value, err, method};
}

EvalResult spatial_outage_quadrature(const DeploymentScene& scene, const OutageQuery& q,
                                     bool exact_kernel)
{
    check_scene(scene);
    double rho_t = normalized_threshold(scene.link_template, q);
    if (rho_t == 0.0)
        return {0.0, 0.0};

    auto conditional = [&](double r) {
        double loss = exact_kernel ? std::pow(scene.bs_distance + r, -scene.pathloss_exp)
                                   : std::pow(scene.bs_distance * r, -scene.pathloss_exp);
        RisLink scaled = scene.link_template;
        scaled.avg_snr *= loss;
        if (scaled.n_elements == 1)
            return outage_n1(scaled, q).value;
        return outage_exact(scaled, q).value;
    };
    QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    spec.rel_tol = 1e-8;
    QuadResult qr = integrate_interval(
        [&](double r) -> cplx {
            return conditional(r) * nearest_pdf(r, scene);
        },
        1e-9 * scene.radius, scene.radius * (1.0 - 1e-12), spec);
    return {qr.value.real(), qr.err};
}

EvalResult spatial_outage_upper(const DeploymentScene& scene, const OutageQuery& q)
{
    check_scene(scene);
    double rho_t = normalized_threshold(scene.link_template, q);
    if (rho_t == 0.0)
        return {0.0, 0.0};
    const RisLink& link = scene.link_template;
    int n = link.n_elements;
    int m = scene.m_ris;
    double quarter = 0.25 * n * scene.pathloss_exp;

    FoxHParams p = detail::merged_bound_pairs(link);
    p.upper.insert(p.upper.begin(), {0.0, quarter}); // Gamma(1 - N*alpha/4 u)
    p.upper.insert(p.upper.begin(), {1.0, 1.0});     // Gamma(-u)
    p.n += 2;
    p.lower.push_back({0.0, 1.0});                       // 1/Gamma(1-u)
    p.lower.push_back({-static_cast<double>(m), quarter}); // 1/Gamma(1+M - N*alpha/4 u)
    p.kappa = detail::link_prefactor(link) * std::tgamma(m + 1.0);
    p.c = detail::arg_scale_product(link);
    double x = std::pow(std::sqrt(rho_t) * edge_gain(scene) / n, n);
    return eval(p, x);
}

AsymptoticOutage spatial_asymptotic(const DeploymentScene& scene)
{
    check_scene(scene);
    const RisLink& link = scene.link_template;
    double tau = detail::link_prefactor(link);
    double gain = edge_gain(scene);

    double zeta_sum = 0.0, coef = tau;
    for (const auto& hop : link.hops) {
        FoxHParams block = detail::outage_block(hop);
        block.c = product_params(hop).c * gain;
        ResidueExpansion r = detail::residue_leading(block);
        if (r.pole_order > 1)
            throw HigherOrderPole("deployment residue law needs simple poles");
        zeta_sum += r.dominant_exponent;
        coef *= r.coefficient;
    }
    double beta_half = 0.25 * scene.pathloss_exp * zeta_sum;
    coef /= std::tgamma(1.0 + zeta_sum);
    coef *= std::exp(std::lgamma(1.0 + beta_half) + std::lgamma(scene.m_ris + 1.0) -
                     std::lgamma(1.0 + beta_half + scene.m_ris));
    return {coef, zeta_sum / 2.0, 0, "simple-poles"};
}

EvalResult scaling_law_large_m(const DeploymentScene& scene, const OutageQuery& q)
{
    check_scene(scene);
    double rho_t = normalized_threshold(scene.link_template, q);
    if (rho_t == 0.0)
        return {0.0, 0.0};
    const RisLink& link = scene.link_template;
    int n = link.n_elements;
    double quarter = 0.25 * n * scene.pathloss_exp;

    // Gamma(M+1)/Gamma(1+M-cu) -> M^{cu}: the M row collapses into a
    // per-element argument rescale M^{-alpha/4}.
    FoxHParams p = detail::merged_bound_pairs(link);
    p.upper.insert(p.upper.begin(), {0.0, quarter});
    p.upper.insert(p.upper.begin(), {1.0, 1.0});
    p.n += 2;
    p.lower.push_back({0.0, 1.0});
    p.kappa = detail::link_prefactor(link);
    p.c = detail::arg_scale_product(link);
    double shrink = std::pow(static_cast<double>(scene.m_ris), -0.25 * scene.pathloss_exp);
    double x = std::pow(std::sqrt(rho_t) * edge_gain(scene) * shrink / n, n);
    return eval(p, x);
}

} // namespace rislink
