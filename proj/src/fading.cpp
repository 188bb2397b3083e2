#include "rislink/fading.hpp"

#include <cmath>

#include "rislink/errors.hpp"
#include "rislink/rng.hpp"

namespace rislink {

namespace {

template <class... Ts>
struct Overload : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

double alpha_mu_eta(const AlphaMu& am)
{
    // Gamma(mu + 2/alpha)/Gamma(mu); scales the amplitude to unit power.
    return std::exp(std::lgamma(am.mu + 2.0 / am.alpha) - std::lgamma(am.mu));
}

} // namespace

void check_params(const FadingModel& model)
{
    std::visit(Overload{
                   [](const Rayleigh&) {},
                   [](const Nakagami& v) {
                       if (!(v.m >= 0.5))
                           throw ParamError("nakagami requires m >= 0.5");
                   },
                   [](const AlphaMu& v) {
                       if (!(v.alpha > 0.0) || !(v.mu > 0.0))
                           throw ParamError("alpha-mu requires alpha > 0 and mu > 0");
                   },
                   [](const FisherF& v) {
                       if (!(v.m > 0.0) || !(v.ms > 1.0))
                           throw ParamError("fisher-f requires m > 0 and ms > 1");
                   },
                   [](const GeneralizedK& v) {
                       if (!(v.m > 0.0) || !(v.k > 0.0))
                           throw ParamError("generalized-k requires m > 0 and k > 0");
                   },
               },
               model);
}

std::string model_name(const FadingModel& model)
{
    return std::visit(Overload{
                          [](const Rayleigh&) { return std::string("rayleigh"); },
                          [](const Nakagami&) { return std::string("nakagami"); },
                          [](const AlphaMu&) { return std::string("alpha-mu"); },
                          [](const FisherF&) { return std::string("fisher-f"); },
                          [](const GeneralizedK&) { return std::string("generalized-k"); },
                      },
                      model);
}

FoxHParams to_foxh(const FadingModel& model)
{
    check_params(model);
    FoxHParams p;
    std::visit(Overload{
                   [&](const Rayleigh&) {
                       p.m = 1;
                       p.kappa = 1.0;
                       p.c = 1.0;
                       p.lower = {{0.5, 0.5}};
                   },
                   [&](const Nakagami& v) {
                       p.m = 1;
                       p.c = std::sqrt(v.m);
                       p.kappa = p.c / std::tgamma(v.m);
                       p.lower = {{v.m - 0.5, 0.5}};
                   },
                   [&](const AlphaMu& v) {
                       double eta = alpha_mu_eta(v);
                       p.m = 1;
                       p.c = std::sqrt(eta);
                       p.kappa = p.c / std::tgamma(v.mu);
                       p.lower = {{v.mu - 1.0 / v.alpha, 1.0 / v.alpha}};
                   },
                   [&](const FisherF& v) {
                       p.m = 1;
                       p.n = 1;
                       p.c = std::sqrt(v.m / (v.ms - 1.0));
                       p.kappa = p.c / (std::tgamma(v.m) * std::tgamma(v.ms));
                       p.upper = {{0.5 - v.ms, 0.5}};
                       p.lower = {{v.m - 0.5, 0.5}};
                   },
                   [&](const GeneralizedK& v) {
                       p.m = 2;
                       p.c = std::sqrt(v.m * v.k);
                       p.kappa = p.c / (std::tgamma(v.m) * std::tgamma(v.k));
                       p.lower = {{v.m - 0.5, 0.5}, {v.k - 0.5, 0.5}};
                   },
               },
               model);
    return p;
}

FoxHParams product_params(const HopPair& hop)
{
    FoxHParams a = to_foxh(hop.h);
    FoxHParams b = to_foxh(hop.g);
    // Mellin transforms multiply, so the pair lists concatenate with
    // numerators kept in front; no shifts at pdf level.
    FoxHParams p;
    p.kappa = a.kappa * b.kappa;
    p.c = a.c * b.c;
    p.m = a.m + b.m;
    p.n = a.n + b.n;
    auto splice = [](std::vector<GammaPair>& dst, const std::vector<GammaPair>& u,
                     const std::vector<GammaPair>& v, int nu, int nv) {
        dst.insert(dst.end(), u.begin(), u.begin() + nu);
        dst.insert(dst.end(), v.begin(), v.begin() + nv);
        dst.insert(dst.end(), u.begin() + nu, u.end());
        dst.insert(dst.end(), v.begin() + nv, v.end());
    };
    splice(p.upper, a.upper, b.upper, a.n, b.n);
    splice(p.lower, a.lower, b.lower, a.m, b.m);
    return p;
}

double sample_one(const FadingModel& model, Rng& rng)
{
    return std::visit(
        Overload{
            [&](const Rayleigh&) { return std::sqrt(rng.gamma(1.0)); },
            [&](const Nakagami& v) { return std::sqrt(rng.gamma(v.m) / v.m); },
            [&](const AlphaMu& v) {
                return std::pow(rng.gamma(v.mu), 1.0 / v.alpha) / std::sqrt(alpha_mu_eta(v));
            },
            [&](const FisherF& v) {
                double num = rng.gamma(v.m) / v.m;
                double den = rng.gamma(v.ms) / (v.ms - 1.0);
                return std::sqrt(num / den);
            },
            [&](const GeneralizedK& v) {
                return std::sqrt(rng.gamma(v.m) / v.m * rng.gamma(v.k) / v.k);
            },
        },
        model);
}

std::vector<double> sample(const FadingModel& model, std::size_t count, uint64_t seed)
{
    check_params(model);
    std::vector<double> out(count);
    Rng rng(seed, 0);
    for (auto& x : out)
        x = sample_one(model, rng);
    return out;
}

} // namespace rislink
