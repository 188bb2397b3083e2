#include "rislink/rng.hpp"

#include <cmath>

namespace rislink {

uint64_t splitmix64(uint64_t& state)
{
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

namespace {

inline uint64_t rotl(uint64_t x, int k)
{
    return (x << k) | (x >> (64 - k));
}

} // namespace

Rng::Rng(uint64_t seed, uint64_t stream) : cached_normal_(0.0), has_cached_(false)
{
    // xoshiro256** state from two splitmix chains keyed by seed and stream;
    // distinct streams decorrelate immediately.
    uint64_t a = seed;
    uint64_t b = stream * 0x9e3779b97f4a7c15ull + 0x6a09e667f3bcc909ull;
    s_[0] = splitmix64(a);
    s_[1] = splitmix64(b);
    s_[2] = splitmix64(a) ^ splitmix64(b);
    s_[3] = splitmix64(b) + splitmix64(a);
    for (int i = 0; i < 8; ++i)
        next_u64();
}

uint64_t Rng::next_u64()
{
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal()
{
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    double u1, u2;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double c = std::cos(6.283185307179586477 * u2);
    double s = std::sin(6.283185307179586477 * u2);
    cached_normal_ = r * s;
    has_cached_ = true;
    return r * c;
}

double Rng::gamma(double shape)
{
    if (shape < 1.0) {
        // boost: G_a = G_{a+1} * U^{1/a}
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v;
    }
}

} // namespace rislink
