#pragma once

// Data-parallel kernels with serial reference versions. The parallel forms
// use OpenMP when available; callers in tests compare the two.

#include <span>
#include <vector>

namespace msj::kernels {

/// Truncated multi-type birth-death chain in mixed-radix layout.
struct BoxChain {
    std::vector<int> dims;          // caps[i] + 1
    std::vector<double> arrival;    // lambda_i
    std::vector<double> service;    // mu_i
    std::vector<int> z;             // allocation, states x types, row-major
    std::size_t num_states() const;
};

/// Infinity norm of pi Q, gathering inflow per state.
double balance_residual_serial(const BoxChain& chain, std::span<const double> pi);
double balance_residual_parallel(const BoxChain& chain, std::span<const double> pi);

/// sum_s pi_s * f_s for several per-state feature columns at once
/// (features is states x k, row-major).
std::vector<double> weighted_sums_serial(std::span<const double> pi, std::span<const double> features,
                                         std::size_t k);
std::vector<double> weighted_sums_parallel(std::span<const double> pi, std::span<const double> features,
                                           std::size_t k);

int max_threads();

}  // namespace msj::kernels
