#include "msj/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace msj::kernels {

std::size_t BoxChain::num_states() const {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

namespace {

double state_residual(const BoxChain& chain, std::span<const double> pi, std::size_t s) {
    const std::size_t types = chain.dims.size();
    double in = 0.0;
    double out = 0.0;
    std::size_t rest = s;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < types; ++i) {
        const int xi = static_cast<int>(rest % chain.dims[i]);
        rest /= chain.dims[i];
        const bool below_cap = xi + 1 < chain.dims[i];
        if (below_cap) {
            out += chain.arrival[i];
            const std::size_t up = s + stride;
            in += pi[up] * chain.service[i] * chain.z[up * types + i];
        }
        if (xi > 0) in += pi[s - stride] * chain.arrival[i];
        out += chain.service[i] * chain.z[s * types + i];
        stride *= chain.dims[i];
    }
    return in - pi[s] * out;
}

}  // namespace

double balance_residual_serial(const BoxChain& chain, std::span<const double> pi) {
    double worst = 0.0;
    const std::size_t states = chain.num_states();
    for (std::size_t s = 0; s < states; ++s) worst = std::max(worst, std::abs(state_residual(chain, pi, s)));
    return worst;
}

double balance_residual_parallel(const BoxChain& chain, std::span<const double> pi) {
    double worst = 0.0;
    const auto states = static_cast<std::ptrdiff_t>(chain.num_states());
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (std::ptrdiff_t s = 0; s < states; ++s) {
        worst = std::max(worst, std::abs(state_residual(chain, pi, static_cast<std::size_t>(s))));
    }
    return worst;
}

std::vector<double> weighted_sums_serial(std::span<const double> pi, std::span<const double> features,
                                         std::size_t k) {
    std::vector<double> out(k, 0.0);
    for (std::size_t s = 0; s < pi.size(); ++s)
        for (std::size_t j = 0; j < k; ++j) out[j] += pi[s] * features[s * k + j];
    return out;
}

std::vector<double> weighted_sums_parallel(std::span<const double> pi, std::span<const double> features,
                                           std::size_t k) {
    std::vector<double> out(k, 0.0);
    const auto states = static_cast<std::ptrdiff_t>(pi.size());
#pragma omp parallel
    {
        std::vector<double> local(k, 0.0);
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t s = 0; s < states; ++s)
            for (std::size_t j = 0; j < k; ++j) local[j] += pi[s] * features[s * k + j];
#pragma omp critical
        for (std::size_t j = 0; j < k; ++j) out[j] += local[j];
    }
    return out;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace msj::kernels
