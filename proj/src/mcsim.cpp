#include "rislink/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rislink/deployment.hpp"
#include "rislink/errors.hpp"
#include "rislink/rng.hpp"

namespace rislink {

namespace {

void check_config(const McConfig& cfg)
{
    if (cfg.trials < 1000)
        throw ParamError("mc trials below 1000 are meaningless here");
    if (cfg.batch < 1)
        throw ParamError("mc batch must be positive");
}

uint64_t batch_count(const McConfig& cfg)
{
    return (cfg.trials + cfg.batch - 1) / cfg.batch;
}

uint64_t batch_size(const McConfig& cfg, uint64_t b)
{
    uint64_t lo = b * cfg.batch;
    return std::min(cfg.batch, cfg.trials - lo);
}

double received_amplitude(const RisLink& link, Rng& rng)
{
    double s = 0.0;
    for (const auto& hop : link.hops)
        s += sample_one(hop.h, rng) * sample_one(hop.g, rng);
    return s;
}

McEstimate binomial_estimate(uint64_t count, uint64_t trials)
{
    double p = static_cast<double>(count) / static_cast<double>(trials);
    double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
    return {p, se, trials};
}

} // namespace

McEstimate mc_outage(const RisLink& link, const OutageQuery& q, const McConfig& cfg)
{
    check_config(cfg);
    double amp_thr = std::sqrt(normalized_threshold(link, q));
    uint64_t nb = batch_count(cfg);
    std::vector<uint64_t> counts(nb, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int64_t b = 0; b < static_cast<int64_t>(nb); ++b) {
        Rng rng(cfg.seed, static_cast<uint64_t>(b));
        uint64_t c = 0;
        uint64_t sz = batch_size(cfg, static_cast<uint64_t>(b));
        for (uint64_t t = 0; t < sz; ++t)
            c += received_amplitude(link, rng) < amp_thr ? 1 : 0;
        counts[b] = c;
    }
    uint64_t total = 0;
    for (uint64_t c : counts) // batch order, bit-identical regardless of threads
        total += c;
    return binomial_estimate(total, cfg.trials);
}

McEstimate mc_capacity(const RisLink& link, const McConfig& cfg)
{
    check_config(cfg);
    (void)normalized_threshold(link, {0.0}); // reuses the link validation
    double rho = link.avg_snr;
    uint64_t nb = batch_count(cfg);
    std::vector<double> sums(nb, 0.0), sqs(nb, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int64_t b = 0; b < static_cast<int64_t>(nb); ++b) {
        Rng rng(cfg.seed, static_cast<uint64_t>(b));
        double s = 0.0, s2 = 0.0;
        uint64_t sz = batch_size(cfg, static_cast<uint64_t>(b));
        for (uint64_t t = 0; t < sz; ++t) {
            double a = received_amplitude(link, rng);
            double v = std::log2(1.0 + rho * a * a);
            s += v;
            s2 += v * v;
        }
        sums[b] = s;
        sqs[b] = s2;
    }
    double sum = 0.0, sq = 0.0;
    for (uint64_t b = 0; b < nb; ++b) {
        sum += sums[b];
        sq += sqs[b];
    }
    double n = static_cast<double>(cfg.trials);
    double mean = sum / n;
    double var = std::max(0.0, (sq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), cfg.trials};
}

McEstimate mc_spatial_outage(const DeploymentScene& scene, const OutageQuery& q,
                             const McConfig& cfg)
{
    check_config(cfg);
    if (scene.m_ris < 1 || !(scene.radius > 0.0) || !(scene.bs_distance > 0.0) ||
        !(scene.pathloss_exp > 0.0))
        throw ParamError("bad deployment geometry");
    double rho_t = normalized_threshold(scene.link_template, q);
    uint64_t nb = batch_count(cfg);
    std::vector<uint64_t> counts(nb, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int64_t b = 0; b < static_cast<int64_t>(nb); ++b) {
        Rng rng(cfg.seed, static_cast<uint64_t>(b));
        uint64_t c = 0;
        uint64_t sz = batch_size(cfg, static_cast<uint64_t>(b));
        for (uint64_t t = 0; t < sz; ++t) {
            double umin = 1.0;
            for (int j = 0; j < scene.m_ris; ++j)
                umin = std::min(umin, rng.uniform());
            double r = scene.radius * std::sqrt(umin); // nearest of M disc points
            double amp_thr = std::sqrt(
                rho_t * std::pow(scene.bs_distance * r, scene.pathloss_exp));
            c += received_amplitude(scene.link_template, rng) < amp_thr ? 1 : 0;
        }
        counts[b] = c;
    }
    uint64_t total = 0;
    for (uint64_t c : counts)
        total += c;
    return binomial_estimate(total, cfg.trials);
}

} // namespace rislink
