#include "rislink/foxh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rislink/errors.hpp"

namespace rislink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// Envelope exponent Re log Theta(g) - g*log z.  Gamma poles of the numerator
// push it to +inf, so the strip edges act as natural barriers and the
// minimizer stays interior; denominator poles (integrand zeros) are skipped
// upward as well, they are harmless single points.
double envelope(const FoxHParams& p, double lnz, double g)
{
    try {
        return detail::log_theta(p, cplx(g, 0.0)).real() - g * lnz;
    } catch (const PoleError&) {
        return kInf;
    }
}

double golden_refine(const FoxHParams& p, double lnz, double a, double b)
{
    constexpr double kGolden = 0.61803398874989485;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = envelope(p, lnz, x1);
    double f2 = envelope(p, lnz, x2);
    for (int it = 0; it < 60 && b - a > 1e-10 * (1.0 + std::abs(a)); ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = envelope(p, lnz, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = envelope(p, lnz, x2);
        }
    }
    return 0.5 * (a + b);
}

// Minimize the envelope over the strip.  Finite strips get a dense scan;
// half-infinite strips expand geometrically away from the finite edge until
// the envelope turns upward.
double pick_abscissa(const FoxHParams& p, double lnz, double lo, double hi)
{
    if (std::isfinite(lo) && std::isfinite(hi)) {
        double w = hi - lo;
        int best = 1;
        double best_f = kInf;
        constexpr int kScan = 96;
        for (int i = 1; i < kScan; ++i) {
            double g = lo + w * i / kScan;
            double f = envelope(p, lnz, g);
            if (f < best_f) {
                best_f = f;
                best = i;
            }
        }
        double a = lo + w * std::max(1, best - 1) / kScan;
        double b = lo + w * std::min(kScan - 1, best + 1) / kScan;
        return golden_refine(p, lnz, a, b);
    }

    double edge = std::isfinite(lo) ? lo : hi;
    double dir = std::isfinite(lo) ? 1.0 : -1.0;
    double step = 1.0 / 64.0;
    double prev_g = edge + dir * step;
    double prev_f = envelope(p, lnz, prev_g);
    double best_g = prev_g, best_f = prev_f, past_best = 0.0;
    for (int i = 0; i < 200; ++i) {
        step *= 1.3;
        double g = prev_g + dir * step;
        double f = envelope(p, lnz, g);
        if (f < best_f) {
            best_f = f;
            best_g = g;
            past_best = 0.0;
        } else {
            past_best += 1.0;
            if (past_best >= 4.0)
                break;
        }
        prev_g = g;
    }
    double a = std::min(best_g - 5.0 * step * dir, best_g + 5.0 * step * dir);
    double b = std::max(best_g - 5.0 * step * dir, best_g + 5.0 * step * dir);
    a = std::isfinite(lo) ? std::max(a, lo + 1e-9) : a;
    b = std::isfinite(hi) ? std::min(b, hi - 1e-9) : b;
    return golden_refine(p, lnz, a, b);
}

int dominant_group(const FoxHParams& p, double zeta, std::vector<int>& members)
{
    members.clear();
    for (int j = 0; j < p.m; ++j)
        if (p.lower[j].val / p.lower[j].coef <= zeta + 1e-9)
            members.push_back(j);
    return static_cast<int>(members.size());
}

} // namespace

namespace detail {

cplx log_theta(const FoxHParams& p, cplx s)
{
    cplx acc = 0.0;
    for (int j = 0; j < static_cast<int>(p.lower.size()); ++j) {
        const auto& [b, B] = p.lower[j];
        if (j < p.m)
            acc += complex_log_gamma(b + B * s);
        else
            acc -= complex_log_gamma(1.0 - b - B * s);
    }
    for (int j = 0; j < static_cast<int>(p.upper.size()); ++j) {
        const auto& [a, A] = p.upper[j];
        if (j < p.n)
            acc += complex_log_gamma(1.0 - a - A * s);
        else
            acc -= complex_log_gamma(a + A * s);
    }
    return acc;
}

SignedLogGamma log_gamma_signed(double x)
{
    if (x > 0.0)
        return {std::lgamma(x), 1.0};
    if (gamma_pole_distance(cplx(x, 0.0)) < gamma_pole_tol)
        throw PoleError("real log-gamma at a pole");
    // Reflection; Gamma(1-x) > 0 here so the sign is that of sin(pi*x).
    double s = std::sin(kPi * (x - 2.0 * std::floor(0.5 * x)));
    return {std::log(kPi / std::abs(s)) - std::lgamma(1.0 - x), s < 0.0 ? -1.0 : 1.0};
}

ResidueExpansion residue_leading(const FoxHParams& p)
{
    if (p.m < 1)
        throw std::invalid_argument("no left pole ladder: m == 0");
    double zeta = kInf;
    for (int j = 0; j < p.m; ++j)
        zeta = std::min(zeta, p.lower[j].val / p.lower[j].coef);
    std::vector<int> grp;
    int order = dominant_group(p, zeta, grp);

    double log_coef = std::log(p.kappa) + zeta * std::log(p.c);
    double sign = 1.0;
    for (int j : grp)
        log_coef -= std::log(p.lower[j].coef);
    for (int r = 2; r < order; ++r)
        log_coef -= std::log(static_cast<double>(r)); // 1/(order-1)!

    auto absorb = [&](double x, double s) {
        SignedLogGamma g = log_gamma_signed(x);
        log_coef += s * g.log_abs;
        if (s > 0.0)
            sign *= g.sign;
        else
            sign /= g.sign;
    };
    for (int j = 0; j < static_cast<int>(p.lower.size()); ++j) {
        if (std::find(grp.begin(), grp.end(), j) != grp.end())
            continue;
        const auto& [b, B] = p.lower[j];
        if (j < p.m)
            absorb(b - B * zeta, 1.0);
        else
            absorb(1.0 - b + B * zeta, -1.0);
    }
    for (int j = 0; j < static_cast<int>(p.upper.size()); ++j) {
        const auto& [a, A] = p.upper[j];
        if (j < p.n)
            absorb(1.0 - a + A * zeta, 1.0);
        else
            absorb(a - A * zeta, -1.0);
    }
    return {zeta, sign * std::exp(log_coef), order - 1, order};
}

} // namespace detail

ValidationReport validate(const FoxHParams& p)
{
    ValidationReport r;
    auto fail = [&](const std::string& why) {
        r.valid = false;
        r.reason = why;
        return r;
    };
    if (p.m < 0 || p.n < 0 || p.m > static_cast<int>(p.lower.size()) ||
        p.n > static_cast<int>(p.upper.size()))
        return fail("numerator counts exceed pair lists");
    if (!(p.kappa == p.kappa) || !(p.c > 0.0))
        return fail("bad prefactor or argument scale");
    for (const auto& g : p.upper)
        if (!(g.coef > 0.0))
            return fail("nonpositive upper coefficient");
    for (const auto& g : p.lower)
        if (!(g.coef > 0.0))
            return fail("nonpositive lower coefficient");

    r.strip_lo = -kInf;
    r.strip_hi = kInf;
    for (int j = 0; j < p.m; ++j)
        r.strip_lo = std::max(r.strip_lo, -p.lower[j].val / p.lower[j].coef);
    for (int j = 0; j < p.n; ++j)
        r.strip_hi = std::min(r.strip_hi, (1.0 - p.upper[j].val) / p.upper[j].coef);
    r.strip_empty = !(r.strip_lo < r.strip_hi - 1e-14);
    if (r.strip_empty)
        return fail("empty fundamental strip");

    double num = 0.0, den = 0.0;
    for (int j = 0; j < static_cast<int>(p.upper.size()); ++j)
        (j < p.n ? num : den) += p.upper[j].coef;
    for (int j = 0; j < static_cast<int>(p.lower.size()); ++j)
        (j < p.m ? num : den) += p.lower[j].coef;
    r.decay_rate = num - den;
    if (!(r.decay_rate > 0.0))
        return fail("contour integrand lacks exponential decay");

    if (p.m >= 1) {
        double zeta = kInf;
        for (int j = 0; j < p.m; ++j)
            zeta = std::min(zeta, p.lower[j].val / p.lower[j].coef);
        std::vector<int> grp;
        r.coincident_poles = dominant_group(p, zeta, grp) > 1;
    }
    r.valid = true;
    return r;
}

EvalResult eval(const FoxHParams& p, double x, const QuadratureSpec& spec)
{
    ValidationReport rep = validate(p);
    if (!rep.valid)
        throw std::invalid_argument("H parameters rejected: " + rep.reason);
    if (!(x > 0.0))
        throw std::invalid_argument("H argument must be positive");

    double lnz = std::log(p.c * x);
    double g = pick_abscissa(p, lnz, rep.strip_lo, rep.strip_hi);

    // The barrier keeps g off numerator poles; a denominator pole under the
    // abscissa only zeroes one sample.  If g still sits within pole
    // tolerance of anything, nudge it by 1e-3 of the local scale once.
    auto on_pole = [&](double gg) {
        try {
            detail::log_theta(p, cplx(gg, 0.0));
            return false;
        } catch (const PoleError&) {
            return true;
        }
    };
    if (on_pole(g)) {
        double width = std::isfinite(rep.strip_hi - rep.strip_lo)
                           ? rep.strip_hi - rep.strip_lo
                           : 1.0;
        g += 1e-3 * width;
        if ((std::isfinite(rep.strip_hi) && g >= rep.strip_hi) || on_pole(g))
            throw PoleOnContour("abscissa pinned to a gamma pole");
    }

    double peak = detail::log_theta(p, cplx(g, 0.0)).real() - g * lnz;
    // value <= kappa*exp(peak)*O(T); below double range, skip the contour
    if (std::log(std::abs(p.kappa) + 1e-300) + peak < -700.0)
        return {0.0, 0.0};
    auto f = [&](double t) -> cplx {
        cplx s(g, t);
        try {
            return std::exp(detail::log_theta(p, s) - s * lnz - peak);
        } catch (const PoleError&) {
            return 0.0;
        }
    };
    QuadResult q = contour_integrate(f, spec);
    double front = p.kappa * std::exp(peak) / (2.0 * kPi);
    return {front * q.value.real(), front * q.err};
}

ResidueExpansion asymptotic(const FoxHParams& p)
{
    ValidationReport rep = validate(p);
    if (!rep.valid)
        throw std::invalid_argument("H parameters rejected: " + rep.reason);
    ResidueExpansion r = detail::residue_leading(p);
    if (r.pole_order > 2)
        throw HigherOrderPole("dominant pole order exceeds 2");
    return r;
}

} // namespace rislink
