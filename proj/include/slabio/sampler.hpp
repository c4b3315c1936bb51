#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slabio/io_relations.hpp"

namespace slabio {

struct SamplePlan {
    double omega = 0;  // rad/s
    double k = 0;      // 1/m
    Pol q = Pol::s;
    double T = 0;                  // K
    std::vector<int> nodes;        // midpoint cells per layer; one entry applies to all layers
    std::size_t realizations = 1;
    std::uint64_t seed = 0;
    int workers = 0;  // 0: worker_count()
};

struct SampleEstimate {
    double w = 0;   // mean |E_out|^2, N0-normalized like emission_w
    double se = 0;  // standard error of the mean
    std::vector<std::string> warnings;
};

// Monte Carlo estimate of the thermal output intensity on one side from
// sampled Langevin currents inside the absorbing layers.
SampleEstimate sample_emission(const SamplePlan& plan, const Stack& st, Side side);

}  // namespace slabio
