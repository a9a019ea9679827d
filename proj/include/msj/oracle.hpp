#pragma once

#include <functional>
#include <span>
#include <vector>

#include "msj/model.hpp"

namespace msj {

struct ErlangC {
    double p_wait = 0.0;
    double mean_wait = 0.0;
};

/// M/M/n waiting probability and mean wait. Requires lambda < n mu.
ErlangC erlang_c(int n, double lambda, double mu);

/// Count-determined allocation x -> z.
using Allocation = std::function<std::vector<int>(std::span<const int>)>;

/// SNF packing as an Allocation for the given config.
Allocation snf_count_allocation(const SystemConfig& config);

struct CtmcSpec {
    SystemConfig config;
    Allocation allocation;
    std::vector<int> caps;  // X_i <= caps[i]; arrivals blocked at the cap
};

struct StationarySolution {
    std::vector<int> caps;
    std::vector<double> pi;  // mixed radix, type 0 fastest
    double tail_mass_bound = 0.0;
    double residual = 0.0;  // ||pi Q||_inf
    double mass_error = 0.0;  // |sum pi - 1|
    std::vector<double> mean_x, mean_z, mean_q;
    double workload = 0.0;
    double normalized_work = 0.0;  // E[sum (l_i/mu_i)(X_i - lambda_i/mu_i)]
    double p_queue = 0.0;          // P(sum l_i X_i >= n)
    bool certified = false;        // tail < 1e-8 and residual < 1e-10
};

StationarySolution ctmc_stationary(const CtmcSpec& spec);

/// Default caps lambda_i/mu_i + 40 sqrt(lambda_i/mu_i) + 40, grown by 1.5x
/// until the tail mass drops below 1e-8 (or max_states is reached).
StationarySolution ctmc_stationary_auto(const SystemConfig& config, const Allocation& allocation,
                                        std::size_t max_states = 2'000'000);

std::vector<int> default_caps(const SystemConfig& config);

}  // namespace msj
