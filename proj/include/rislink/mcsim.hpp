#pragma once

#include <cstdint>

#include "rislink/metrics.hpp"

namespace rislink {

struct DeploymentScene; // deployment.hpp

struct McConfig {
    uint64_t trials = 1000000; // >= 1000
    uint64_t seed = 1;
    uint64_t batch = 65536;
};

struct McEstimate {
    double mean;
    double std_error;
    uint64_t trials;

    // Below ~10 observed events an outage estimate is noise, not a value.
    bool resolved() const { return mean * static_cast<double>(trials) >= 10.0; }
};

// All three are bit-identical for fixed (config, inputs) under any thread
// count: batches own disjoint substreams and partial results merge in batch
// order.
McEstimate mc_outage(const RisLink& link, const OutageQuery& q, const McConfig& cfg);
McEstimate mc_capacity(const RisLink& link, const McConfig& cfg);
McEstimate mc_spatial_outage(const DeploymentScene& scene, const OutageQuery& q, const McConfig& cfg);

} // namespace rislink
