#pragma once

#include <complex>

namespace rislink {

using cplx = std::complex<double>;

// Principal-branch log Gamma, accurate to ~1e-13 relative across the strips
// visited by Mellin-Barnes contours (|Re z| up to a few hundred, any Im).
//
// Strategy: Stirling with 12 Bernoulli terms once Re z >= 12, upward
// recurrence log G(z) = log G(z+n) - sum log(z+j) below that.  The recurrence
// keeps the principal branch exact off the cut (-inf, 0], so no reflection
// step is needed.  Im z < 0 is handled by conjugation symmetry, which makes
// conj(clgamma(z)) == clgamma(conj(z)) bit-exact.
//
// Throws PoleError when z is within pole_tol of a nonpositive real integer.
// Real z < 0 between poles returns the limit from above (Im -> 0+).
cplx complex_log_gamma(cplx z);

// Distance from z to the nearest gamma pole (nonpositive real integers).
double gamma_pole_distance(cplx z);

inline constexpr double gamma_pole_tol = 1e-12;

} // namespace rislink
