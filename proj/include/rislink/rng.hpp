#pragma once

#include <cstdint>

namespace rislink {

// splitmix64; also used to derive independent substreams from (seed, index).
uint64_t splitmix64(uint64_t& state);

// Small counter-free PRNG with per-batch substreams: Rng(seed, batch) streams
// never overlap in practice and batches can be consumed in any thread order
// while results stay bit-identical when merged by batch index.
class Rng {
public:
    Rng(uint64_t seed, uint64_t stream);

    uint64_t next_u64();
    double uniform();              // [0, 1), 53-bit
    double normal();               // Box-Muller, caches the second deviate
    double gamma(double shape);    // Marsaglia-Tsang, shape boost below 1

private:
    uint64_t s_[4];
    double cached_normal_;
    bool has_cached_;
};

} // namespace rislink
