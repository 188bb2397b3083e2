#include "rislink/foxh_multi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rislink/errors.hpp"
#include "rislink/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rislink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
constexpr double kTailLogDrop = 46.0; // ~1e-20 relative at the lattice edge

struct Geometry {
    std::vector<ValidationReport> reps;
    std::vector<double> lnz;
    bool uniform_rows;
    double window_lo, window_hi; // admissible range for sum of abscissae
    double cup_growth;           // coupling growth rate along |Im|, >= 0
};

void check_shape(const MultiFoxHParams& p, const std::vector<double>& args)
{
    size_t n = p.blocks.size();
    if (n == 0)
        throw std::invalid_argument("no blocks");
    if (args.size() != n || p.arg_scales.size() != n)
        throw std::invalid_argument("args/arg_scales size mismatch");
    if (p.outer_n > static_cast<int>(p.outer_upper.size()) ||
        p.outer_m > static_cast<int>(p.outer_lower.size()))
        throw std::invalid_argument("outer numerator counts exceed row lists");
    for (const auto& row : p.outer_upper)
        if (row.coefs.size() != n)
            throw std::invalid_argument("outer row width mismatch");
    for (const auto& row : p.outer_lower)
        if (row.coefs.size() != n)
            throw std::invalid_argument("outer row width mismatch");
    for (const auto& b : p.blocks)
        if (b.kappa != 1.0 || b.c != 1.0)
            throw std::invalid_argument("block prefactors must live in scale/arg_scales");
}

bool row_uniform(const OuterRow& row)
{
    for (double c : row.coefs)
        if (std::abs(c - row.coefs[0]) > 1e-14)
            return false;
    return true;
}

Geometry analyze(const MultiFoxHParams& p, const std::vector<double>& args)
{
    check_shape(p, args);
    Geometry g;
    g.uniform_rows = true;
    g.window_lo = -kInf;
    g.window_hi = kInf;
    g.cup_growth = 0.0;
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        ValidationReport r = validate(p.blocks[i]);
        if (!r.valid)
            throw std::invalid_argument("block rejected: " + r.reason);
        g.reps.push_back(r);
        double z = p.arg_scales[i] * args[i];
        if (!(z > 0.0))
            throw std::invalid_argument("arguments must be positive");
        g.lnz.push_back(std::log(z));
    }

    for (const auto& row : p.outer_upper)
        g.uniform_rows = g.uniform_rows && row_uniform(row);
    for (const auto& row : p.outer_lower)
        g.uniform_rows = g.uniform_rows && row_uniform(row);

    double num = 0.0, den = 0.0;
    auto add_window = [&](double lim, bool is_min) {
        if (is_min)
            g.window_hi = std::min(g.window_hi, lim);
        else
            g.window_lo = std::max(g.window_lo, lim);
    };
    for (int j = 0; j < static_cast<int>(p.outer_upper.size()); ++j) {
        const auto& row = p.outer_upper[j];
        double c = row.coefs[0];
        (j < p.outer_n ? num : den) += std::abs(c);
        if (j < p.outer_n && g.uniform_rows)
            add_window((1.0 - row.val) / c, c > 0.0);
    }
    for (int j = 0; j < static_cast<int>(p.outer_lower.size()); ++j) {
        const auto& row = p.outer_lower[j];
        double c = row.coefs[0];
        (j < p.outer_m ? num : den) += std::abs(c);
        if (j < p.outer_m && g.uniform_rows)
            add_window(-row.val / c, c < 0.0);
    }
    g.cup_growth = std::max(0.0, (kPi / 2.0) * (den - num));
    if (!(g.window_lo < g.window_hi))
        throw std::invalid_argument("outer rows leave no joint contour window");
    return g;
}

// Coupling as a function of the contour sum; valid when all rows uniform.
cplx log_outer_sum(const MultiFoxHParams& p, cplx w)
{
    cplx acc = 0.0;
    for (int j = 0; j < static_cast<int>(p.outer_upper.size()); ++j) {
        const auto& row = p.outer_upper[j];
        cplx arg = row.coefs[0] * w;
        if (j < p.outer_n)
            acc += complex_log_gamma(1.0 - row.val - arg);
        else
            acc -= complex_log_gamma(row.val + arg);
    }
    for (int j = 0; j < static_cast<int>(p.outer_lower.size()); ++j) {
        const auto& row = p.outer_lower[j];
        cplx arg = row.coefs[0] * w;
        if (j < p.outer_m)
            acc += complex_log_gamma(row.val + arg);
        else
            acc -= complex_log_gamma(1.0 - row.val - arg);
    }
    return acc;
}

// General form on a full contour point; u[i] = gamma_i + i*t_i.
cplx log_outer_general(const MultiFoxHParams& p, const std::vector<cplx>& u)
{
    cplx acc = 0.0;
    auto dot = [&](const OuterRow& row) {
        cplx s = 0.0;
        for (size_t i = 0; i < u.size(); ++i)
            s += row.coefs[i] * u[i];
        return s;
    };
    for (int j = 0; j < static_cast<int>(p.outer_upper.size()); ++j) {
        cplx arg = dot(p.outer_upper[j]);
        if (j < p.outer_n)
            acc += complex_log_gamma(1.0 - p.outer_upper[j].val - arg);
        else
            acc -= complex_log_gamma(p.outer_upper[j].val + arg);
    }
    for (int j = 0; j < static_cast<int>(p.outer_lower.size()); ++j) {
        cplx arg = dot(p.outer_lower[j]);
        if (j < p.outer_m)
            acc += complex_log_gamma(p.outer_lower[j].val + arg);
        else
            acc -= complex_log_gamma(1.0 - p.outer_lower[j].val - arg);
    }
    return acc;
}

double block_envelope(const FoxHParams& b, double lnz, double g)
{
    try {
        return detail::log_theta(b, cplx(g, 0.0)).real() - g * lnz;
    } catch (const PoleError&) {
        return kInf;
    }
}

// Per-dimension envelope minimum, then a shift of all abscissae by a common
// lambda (clamped to per-dimension strips) to land the contour sum inside
// the joint window.  Numerator gamma poles at the strip edges push the
// envelope to +inf, so minimizers are interior.
std::vector<double> choose_abscissae(const MultiFoxHParams& p, const Geometry& g)
{
    size_t n = p.blocks.size();
    std::vector<double> lo(n), hi(n), best(n);
    for (size_t i = 0; i < n; ++i) {
        lo[i] = g.reps[i].strip_lo;
        hi[i] = g.reps[i].strip_hi;
        if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]))
            throw std::invalid_argument("multivariate blocks need two-sided strips");
        double w = hi[i] - lo[i];
        double bf = kInf;
        for (int s = 1; s < 160; ++s) {
            double cand = lo[i] + w * s / 160.0;
            double f = block_envelope(p.blocks[i], g.lnz[i], cand);
            if (f < bf) {
                bf = f;
                best[i] = cand;
            }
        }
    }
    if (!g.uniform_rows)
        return best;

    double sum = std::accumulate(best.begin(), best.end(), 0.0);
    double wlo = g.window_lo, whi = g.window_hi;
    double target = sum;
    if (std::isfinite(wlo) && std::isfinite(whi)) {
        double margin = 0.2 * std::min(whi - wlo, 2.0);
        target = std::clamp(sum, wlo + margin, whi - margin);
    } else if (std::isfinite(whi)) {
        target = std::min(sum, whi - 0.2);
    } else if (std::isfinite(wlo)) {
        target = std::max(sum, wlo + 0.2);
    }
    if (target == sum)
        return best;

    auto shifted_sum = [&](double lam) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double eps = 0.02 * (hi[i] - lo[i]);
            s += std::clamp(best[i] + lam, lo[i] + eps, hi[i] - eps);
        }
        return s;
    };
    double a = -50.0, b = 50.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        (shifted_sum(mid) < target ? a : b) = mid;
    }
    for (size_t i = 0; i < n; ++i) {
        double eps = 0.02 * (hi[i] - lo[i]);
        best[i] = std::clamp(best[i] + 0.5 * (a + b), lo[i] + eps, hi[i] - eps);
    }
    return best;
}

// One-sided truncation: walk outward until the block magnitude, padded by
// the coupling growth allowance, drops log_drop below its peak.
double block_tail(const FoxHParams& b, double gamma, double cup_growth, double scan_step,
                  double log_drop = kTailLogDrop)
{
    double peak = detail::log_theta(b, cplx(gamma, 0.0)).real();
    double t = scan_step;
    for (int i = 0; i < 200000; ++i) {
        double v = detail::log_theta(b, cplx(gamma, t)).real();
        if (v - peak + cup_growth * t < -log_drop)
            return t;
        t += scan_step;
    }
    throw NonConvergence("block contour magnitude does not decay");
}

std::vector<cplx> block_samples(const FoxHParams& b, double gamma, double lnz, double h,
                                int half_n, double base_log)
{
    std::vector<cplx> out(2 * half_n + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = -half_n; j <= half_n; ++j) {
        cplx s(gamma, j * h);
        cplx lg;
        try {
            lg = detail::log_theta(b, s) - s * lnz - base_log;
            out[j + half_n] = std::exp(lg);
        } catch (const PoleError&) {
            out[j + half_n] = 0.0; // denominator zero under the contour
        }
    }
    return out;
}

std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    std::vector<cplx> out(a.size() + b.size() - 1, cplx(0.0));
    int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int k = 0; k < na + nb - 1; ++k) {
        cplx acc = 0.0;
        int j0 = std::max(0, k - nb + 1), j1 = std::min(na - 1, k);
        for (int j = j0; j <= j1; ++j)
            acc += a[j] * b[k - j];
        out[k] = acc;
    }
    return out;
}

double lattice_pass(const MultiFoxHParams& p, const Geometry& g,
                    const std::vector<double>& gammas, double h,
                    const std::vector<int>& half_n)
{
    size_t n = p.blocks.size();
    double base_total = 0.0;
    std::vector<std::vector<cplx>> arrays;
    for (size_t i = 0; i < n; ++i) {
        double base = block_envelope(p.blocks[i], g.lnz[i], gammas[i]);
        base_total += base;
        arrays.push_back(block_samples(p.blocks[i], gammas[i], g.lnz[i], h, half_n[i], base));
    }
    std::vector<cplx> chain = arrays[0];
    for (size_t i = 1; i < n; ++i)
        chain = convolve(chain, arrays[i]);

    int total_half = std::accumulate(half_n.begin(), half_n.end(), 0);
    double gsum = std::accumulate(gammas.begin(), gammas.end(), 0.0);
    std::vector<double> terms(chain.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int m = -total_half; m <= total_half; ++m) {
        cplx w(gsum, m * h);
        double term;
        try {
            term = (chain[m + total_half] * std::exp(log_outer_sum(p, w))).real();
        } catch (const PoleError&) {
            term = 0.0;
        }
        terms[m + total_half] = term;
    }
    double acc = 0.0;
    for (double t : terms) // fixed order, deterministic
        acc += t;
    return p.scale * acc * std::exp(base_total) * std::pow(h / (2.0 * kPi), n);
}

double nested_pass(const MultiFoxHParams& p, const Geometry& g,
                   const std::vector<double>& gammas, double h,
                   const std::vector<int>& half_n)
{
    size_t n = p.blocks.size();
    if (n > 3)
        throw DimensionLimit("nested reference capped at three dimensions");
    double base_total = 0.0;
    std::vector<std::vector<cplx>> arrays;
    for (size_t i = 0; i < n; ++i) {
        double base = block_envelope(p.blocks[i], g.lnz[i], gammas[i]);
        base_total += base;
        arrays.push_back(block_samples(p.blocks[i], gammas[i], g.lnz[i], h, half_n[i], base));
    }
    std::vector<int> idx(n, 0);
    for (size_t i = 0; i < n; ++i)
        idx[i] = -half_n[i];
    double acc = 0.0;
    std::vector<cplx> u(n);
    for (;;) {
        cplx prod = 1.0;
        for (size_t i = 0; i < n; ++i) {
            prod *= arrays[i][idx[i] + half_n[i]];
            u[i] = cplx(gammas[i], idx[i] * h);
        }
        try {
            acc += (prod * std::exp(log_outer_general(p, u))).real();
        } catch (const PoleError&) {
        }
        size_t d = 0;
        while (d < n && ++idx[d] > half_n[d]) {
            idx[d] = -half_n[d];
            ++d;
        }
        if (d == n)
            break;
    }
    return p.scale * acc * std::exp(base_total) * std::pow(h / (2.0 * kPi), n);
}

// Step limit: trapezoid periodization decays like exp(-2*pi*d/h) with d the
// contour-to-pole gap, plus enough samples per oscillation of z^{-it}.
double choose_step(const MultiFoxHParams& p, const Geometry& g, const std::vector<double>& gammas)
{
    double d = kInf;
    for (size_t i = 0; i < p.blocks.size(); ++i)
        d = std::min({d, gammas[i] - g.reps[i].strip_lo, g.reps[i].strip_hi - gammas[i]});
    if (g.uniform_rows) {
        double gsum = std::accumulate(gammas.begin(), gammas.end(), 0.0);
        if (std::isfinite(g.window_lo))
            d = std::min(d, gsum - g.window_lo);
        if (std::isfinite(g.window_hi))
            d = std::min(d, g.window_hi - gsum);
    }
    double osc = 0.0;
    for (double l : g.lnz)
        osc = std::max(osc, std::abs(l));
    return std::min(d / 6.0, kPi / (3.0 * (1.0 + osc)));
}

MultiEvalResult eval_lattice_refined(const MultiFoxHParams& p, const Geometry& g,
                                     const QuadratureSpec& spec)
{
    std::vector<double> gammas = choose_abscissae(p, g);
    double peak = std::log(std::abs(p.scale) + 1e-300);
    for (size_t i = 0; i < p.blocks.size(); ++i)
        peak += block_envelope(p.blocks[i], g.lnz[i], gammas[i]);
    if (peak < -700.0)
        return {0.0, 0.0, MultiMethod::nested_quadrature};
    double h = choose_step(p, g, gammas);
    std::vector<int> half_n(p.blocks.size());
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        double tail = block_tail(p.blocks[i], gammas[i], g.cup_growth, std::max(h, 0.125));
        half_n[i] = static_cast<int>(std::ceil(tail / h)) + 2;
    }

    bool general = !g.uniform_rows;
    auto pass = [&](double hh, const std::vector<int>& kk) {
        return general ? nested_pass(p, g, gammas, hh, kk) : lattice_pass(p, g, gammas, hh, kk);
    };
    double v_prev = pass(h, half_n);
    double err = kInf;
    for (int round = 0; round < 3; ++round) {
        h *= 0.5;
        for (auto& k : half_n)
            k = static_cast<int>(std::ceil(k * 2 * 1.2));
        double v = pass(h, half_n);
        err = std::abs(v - v_prev) + 1e-300;
        v_prev = v;
        if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(v)))
            break;
    }
    if (err > 1e-4 * std::max(1.0, std::abs(v_prev)))
        throw NonConvergence("lattice refinement stalled");
    return {v_prev, err, MultiMethod::nested_quadrature};
}

// Randomized-contour path: importance sampling from per-dimension Laplace
// proposals under randomized Halton points; replicates differ only in their
// Cranley-Patterson shift, so the spread across replicates prices the bias
// and the variance together.
MultiEvalResult eval_qmc(const MultiFoxHParams& p, const Geometry& g, const QuadratureSpec& spec,
                         uint64_t seed)
{
    size_t n = p.blocks.size();
    std::vector<double> gammas = choose_abscissae(p, g);

    std::vector<double> rate(n), base(n);
    double base_total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        // asymptotic decay of the block minus the coupling allowance
        double lam = (kPi / 2.0) * g.reps[i].decay_rate - g.cup_growth;
        if (lam <= 0.05)
            throw NonConvergence("contour decay too weak for importance sampling");
        rate[i] = 0.7 * lam;
        base[i] = block_envelope(p.blocks[i], g.lnz[i], gammas[i]);
        base_total += base[i];
    }
    if (std::log(std::abs(p.scale) + 1e-300) + base_total < -700.0)
        return {0.0, 0.0, MultiMethod::randomized_contour};

    constexpr int kPrimes[8] = {2, 3, 5, 7, 11, 13, 17, 19};
    const int replicates = 20;
    const int points = std::clamp(spec.max_nodes / (replicates * 4), 2048, 16384);

    std::vector<double> means(replicates);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int r = 0; r < replicates; ++r) {
        uint64_t state = seed + 0x12345u * (r + 1);
        std::vector<double> shift(n);
        for (size_t i = 0; i < n; ++i)
            shift[i] = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
        double acc = 0.0;
        std::vector<cplx> u(n);
        for (int q = 0; q < points; ++q) {
            double log_w = 0.0;
            cplx prod_phase = 1.0;
            for (size_t i = 0; i < n; ++i) {
                // radical inverse in base kPrimes[i], Cranley-Patterson shifted
                double v = 0.0, f = 1.0;
                int idx = q + 64;
                while (idx > 0) {
                    f /= kPrimes[i];
                    v += f * (idx % kPrimes[i]);
                    idx /= kPrimes[i];
                }
                v += shift[i];
                v -= std::floor(v);
                v = std::clamp(v, 1e-15, 1.0 - 1e-15);
                double t = v < 0.5 ? std::log(2.0 * v) / rate[i]
                                   : -std::log(2.0 * (1.0 - v)) / rate[i];
                double log_pdf = std::log(0.5 * rate[i]) - rate[i] * std::abs(t);
                u[i] = cplx(gammas[i], t);
                try {
                    cplx lg = detail::log_theta(p.blocks[i], u[i]) - u[i] * g.lnz[i] - base[i];
                    log_w += lg.real() - log_pdf;
                    prod_phase *= std::exp(cplx(0.0, lg.imag()));
                } catch (const PoleError&) {
                    log_w = -kInf;
                }
            }
            if (!std::isfinite(log_w))
                continue;
            try {
                cplx c = std::exp(log_outer_general(p, u));
                acc += (std::exp(log_w) * prod_phase * c).real();
            } catch (const PoleError&) {
            }
        }
        means[r] = acc / points;
    }

    double mean = 0.0;
    for (double m : means)
        mean += m;
    mean /= replicates;
    double var = 0.0;
    for (double m : means)
        var += (m - mean) * (m - mean);
    var /= replicates * (replicates - 1.0);

    double front = p.scale * std::exp(base_total) * std::pow(1.0 / (2.0 * kPi), n);
    return {front * mean, std::abs(front) * 2.0 * std::sqrt(var), MultiMethod::randomized_contour};
}

} // namespace

namespace detail {

LatticePlan plan_lattice(const MultiFoxHParams& p, const std::vector<double>& args,
                         double tail_log_drop)
{
    Geometry g = analyze(p, args);
    LatticePlan plan;
    plan.gammas = choose_abscissae(p, g);
    plan.h = choose_step(p, g, plan.gammas);
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        double tail = block_tail(p.blocks[i], plan.gammas[i], g.cup_growth,
                                 std::max(plan.h, 0.125), tail_log_drop);
        plan.half_n.push_back(static_cast<int>(std::ceil(tail / plan.h)) + 2);
    }
    return plan;
}

double eval_on_lattice(const MultiFoxHParams& p, const std::vector<double>& args,
                       const LatticePlan& plan)
{
    Geometry g = analyze(p, args);
    if (!g.uniform_rows)
        throw std::invalid_argument("convolution path requires uniform outer rows");
    return lattice_pass(p, g, plan.gammas, plan.h, plan.half_n);
}

double eval_on_lattice_nested(const MultiFoxHParams& p, const std::vector<double>& args,
                              const LatticePlan& plan)
{
    Geometry g = analyze(p, args);
    return nested_pass(p, g, plan.gammas, plan.h, plan.half_n);
}

} // namespace detail

MultiEvalResult eval_multi(const MultiFoxHParams& p, const std::vector<double>& args,
                           const QuadratureSpec& spec, uint64_t seed)
{
    Geometry g = analyze(p, args);
    size_t n = p.blocks.size();
    if (n > 8)
        throw DimensionLimit("more than eight coupled contours");
    if (n <= 3)
        return eval_lattice_refined(p, g, spec);
    return eval_qmc(p, g, spec, seed);
}

FoxHParams collapse_n1(const MultiFoxHParams& p)
{
    if (p.blocks.size() != 1)
        throw ArityError("collapse_n1 requires exactly one block");
    const FoxHParams& b = p.blocks[0];

    std::vector<GammaPair> un(b.upper.begin(), b.upper.begin() + b.n);
    std::vector<GammaPair> ud(b.upper.begin() + b.n, b.upper.end());
    std::vector<GammaPair> ln(b.lower.begin(), b.lower.begin() + b.m);
    std::vector<GammaPair> ld(b.lower.begin() + b.m, b.lower.end());

    // Outer rows with negative coefficients flip sides when written in
    // single-variable form.
    for (int j = 0; j < static_cast<int>(p.outer_upper.size()); ++j) {
        auto [a, cs] = p.outer_upper[j];
        double c = cs[0];
        bool num = j < p.outer_n;
        if (c > 0.0)
            (num ? un : ud).push_back({a, c});
        else
            (num ? ln : ld).push_back({1.0 - a, -c});
    }
    for (int j = 0; j < static_cast<int>(p.outer_lower.size()); ++j) {
        auto [bv, cs] = p.outer_lower[j];
        double c = cs[0];
        bool num = j < p.outer_m;
        if (c > 0.0)
            (num ? ln : ld).push_back({bv, c});
        else
            (num ? un : ud).push_back({1.0 - bv, -c});
    }

    // Gamma(1-a-Au)/Gamma(1-b-Bu) and Gamma(b+Bu)/Gamma(a+Au) cancel when
    // the pairs coincide.
    auto cancel = [](std::vector<GammaPair>& numv, std::vector<GammaPair>& denv) {
        for (size_t i = 0; i < numv.size();) {
            bool hit = false;
            for (size_t j = 0; j < denv.size(); ++j) {
                if (std::abs(numv[i].val - denv[j].val) < 1e-12 &&
                    std::abs(numv[i].coef - denv[j].coef) < 1e-12) {
                    denv.erase(denv.begin() + j);
                    numv.erase(numv.begin() + i);
                    hit = true;
                    break;
                }
            }
            if (!hit)
                ++i;
        }
    };
    cancel(un, ld);
    cancel(ln, ud);

    FoxHParams out;
    out.kappa = p.scale;
    out.c = p.arg_scales[0];
    out.n = static_cast<int>(un.size());
    out.m = static_cast<int>(ln.size());
    out.upper = std::move(un);
    out.upper.insert(out.upper.end(), ud.begin(), ud.end());
    out.lower = std::move(ln);
    out.lower.insert(out.lower.end(), ld.begin(), ld.end());
    return out;
}

} // namespace rislink
