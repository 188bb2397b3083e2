#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rislink/foxh.hpp"

namespace rislink {

// Amplitude models, all normalized to unit second moment so avg_snr keeps a
// single meaning across the catalog.
struct Rayleigh {};
struct Nakagami {
    double m; // m >= 0.5
};
struct AlphaMu {
    double alpha; // > 0
    double mu;    // > 0
};
struct FisherF {
    double m;  // > 0
    double ms; // > 1, finite energy
};
struct GeneralizedK {
    double m; // multipath shape, > 0
    double k; // shadowing shape, > 0
};

using FadingModel = std::variant<Rayleigh, Nakagami, AlphaMu, FisherF, GeneralizedK>;

// Throws ParamError when shape parameters leave the supported region.
void check_params(const FadingModel& model);

std::string model_name(const FadingModel& model);

// Amplitude pdf as kappa * H[c*x | ...]; exact for every catalog entry.
FoxHParams to_foxh(const FadingModel& model);

struct HopPair {
    FadingModel h; // BS -> surface
    FadingModel g; // surface -> user
};

// Pdf of the per-element product amplitude X = h*g via the Mellin
// convolution: pair lists merge, kappa multiplies, c multiplies.
FoxHParams product_params(const HopPair& hop);

// count iid amplitude draws; deterministic in (model, count, seed).
std::vector<double> sample(const FadingModel& model, std::size_t count, uint64_t seed);

class Rng;
double sample_one(const FadingModel& model, Rng& rng);

} // namespace rislink
