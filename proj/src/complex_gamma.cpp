#include "rislink/complex_gamma.hpp"

#include <cmath>

#include "rislink/errors.hpp"

namespace rislink {

namespace {

// B_{2k}/(2k(2k-1)), k = 1..12.  Stirling truncation error at Re z >= 12 is
// below the last retained term, ~1e-23 relative.
constexpr double kStirling[12] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

cplx stirling_log_gamma(cplx z)
{
    cplx lz = std::log(z);
    cplx out = (z - 0.5) * lz - z + kHalfLog2Pi;
    cplx zi = 1.0 / z;
    cplx zi2 = zi * zi;
    cplx p = zi;
    for (double c : kStirling) {
        out += c * p;
        p *= zi2;
    }
    return out;
}

} // namespace

double gamma_pole_distance(cplx z)
{
    if (z.real() > 0.5)
        return std::abs(z);
    double r = std::round(z.real());
    return std::hypot(z.real() - r, z.imag());
}

cplx complex_log_gamma(cplx z)
{
    if (std::signbit(z.imag()))
        return std::conj(complex_log_gamma(std::conj(z)));
    if (gamma_pole_distance(z) < gamma_pole_tol)
        throw PoleError("log-gamma evaluated at a pole");

    // Recurrence into the Stirling region.  Im z >= +0 here, so each log is
    // the principal branch and real negative arguments land on the upper rim
    // of the cut, the limit-from-above convention.
    cplx shift = 0.0;
    int steps = 0;
    if (z.real() < 12.0)
        steps = static_cast<int>(std::ceil(12.0 - z.real()));
    for (int j = 0; j < steps; ++j)
        shift += std::log(z + static_cast<double>(j));
    return stirling_log_gamma(z + static_cast<double>(steps)) - shift;
}

} // namespace rislink
