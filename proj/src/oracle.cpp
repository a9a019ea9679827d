#include "msj/oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "msj/kernels.hpp"
#include "msj/policies.hpp"

namespace msj {

ErlangC erlang_c(int n, double lambda, double mu) {
    if (n < 1 || !(lambda >= 0.0) || !(mu > 0.0)) throw std::invalid_argument("invalid M/M/n parameters");
    if (!(lambda < n * mu)) throw std::invalid_argument("M/M/n is unstable (lambda >= n mu)");
    const double a = lambda / mu;
    // Erlang B by the usual recursion, then convert to Erlang C.
    double b = 1.0;
    for (int k = 1; k <= n; ++k) b = a * b / (k + a * b);
    const double rho = a / n;
    ErlangC out;
    out.p_wait = b / (1.0 - rho * (1.0 - b));
    out.mean_wait = out.p_wait / (n * mu - lambda);
    return out;
}

Allocation snf_count_allocation(const SystemConfig& config) {
    return [needs = config.needs(), n = config.n](std::span<const int> x) { return snf_allocation(x, needs, n); };
}

std::vector<int> default_caps(const SystemConfig& config) {
    std::vector<int> caps;
    for (const auto& t : config.types) {
        const double mean = t.arrival_rate / t.service_rate;
        caps.push_back(static_cast<int>(std::ceil(mean + 40.0 * std::sqrt(mean) + 40.0)));
    }
    return caps;
}

StationarySolution ctmc_stationary(const CtmcSpec& spec) {
    const auto& config = spec.config;
    validate(config);
    const std::size_t types = config.num_types();
    if (spec.caps.size() != types) throw std::invalid_argument("need one cap per type");
    if (!spec.allocation) throw std::invalid_argument("allocation is empty");

    kernels::BoxChain chain;
    for (int c : spec.caps) {
        if (c < 1) throw std::invalid_argument("caps must be positive");
        chain.dims.push_back(c + 1);
    }
    for (const auto& t : config.types) {
        chain.arrival.push_back(t.arrival_rate);
        chain.service.push_back(t.service_rate);
    }
    const std::size_t states = chain.num_states();
    const auto needs = config.needs();

    // Allocation table and feasibility.
    chain.z.resize(states * types);
    std::vector<int> x(types, 0);
    for (std::size_t s = 0; s < states; ++s) {
        std::size_t rest = s;
        for (std::size_t i = 0; i < types; ++i) {
            x[i] = static_cast<int>(rest % chain.dims[i]);
            rest /= chain.dims[i];
        }
        const auto z = spec.allocation(x);
        long long busy = 0;
        for (std::size_t i = 0; i < types; ++i) {
            if (z[i] < 0 || z[i] > x[i]) throw std::invalid_argument("allocation infeasible: z_i outside [0, x_i]");
            busy += static_cast<long long>(needs[i]) * z[i];
            chain.z[s * types + i] = z[i];
        }
        if (busy > config.n) throw std::invalid_argument("allocation infeasible: exceeds n servers");
    }

    // Q^T with the first balance equation replaced by normalization.
    using Triplet = Eigen::Triplet<double>;
    std::vector<Triplet> entries;
    entries.reserve(states * (2 * types + 1));
    std::size_t stride = 1;
    std::vector<std::size_t> strides(types);
    for (std::size_t i = 0; i < types; ++i) {
        strides[i] = stride;
        stride *= chain.dims[i];
    }
    for (std::size_t s = 0; s < states; ++s) {
        std::size_t rest = s;
        double out = 0.0;
        for (std::size_t i = 0; i < types; ++i) {
            const int xi = static_cast<int>(rest % chain.dims[i]);
            rest /= chain.dims[i];
            if (xi + 1 < chain.dims[i]) {
                out += chain.arrival[i];
                if (s + strides[i] != 0) entries.emplace_back(s + strides[i], s, chain.arrival[i]);
            }
            const double dep = chain.service[i] * chain.z[s * types + i];
            if (dep > 0.0) {
                out += dep;
                if (s - strides[i] != 0) entries.emplace_back(s - strides[i], s, dep);
            }
        }
        if (s != 0) entries.emplace_back(s, s, -out);
    }
    for (std::size_t s = 0; s < states; ++s) entries.emplace_back(0, s, 1.0);

    Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(states), static_cast<Eigen::Index>(states));
    a.setFromTriplets(entries.begin(), entries.end());
    a.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> solver;
    solver.compute(a);
    if (solver.info() != Eigen::Success) throw std::runtime_error("CTMC generator is singular");
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(states));
    rhs[0] = 1.0;
    const Eigen::VectorXd sol = solver.solve(rhs);
    if (solver.info() != Eigen::Success) throw std::runtime_error("CTMC solve failed");

    StationarySolution out;
    out.caps = spec.caps;
    out.pi.assign(sol.data(), sol.data() + states);
    for (double& p : out.pi)
        if (p < 0.0 && p > -1e-14) p = 0.0;

    out.residual = kernels::balance_residual_parallel(chain, out.pi);
    out.mass_error = std::abs(std::accumulate(out.pi.begin(), out.pi.end(), 0.0) - 1.0);

    // Feature columns: x_i, z_i, q_i per type, then workload, normalized
    // work, queueing indicator, boundary indicator.
    const std::size_t k = 3 * types + 4;
    std::vector<double> features(states * k, 0.0);
    for (std::size_t s = 0; s < states; ++s) {
        std::size_t rest = s;
        double workload = 0.0;
        double normalized = 0.0;
        long long total_need = 0;
        bool boundary = false;
        double* f = &features[s * k];
        for (std::size_t i = 0; i < types; ++i) {
            const int xi = static_cast<int>(rest % chain.dims[i]);
            rest /= chain.dims[i];
            const int zi = chain.z[s * types + i];
            const double work = needs[i] / chain.service[i];
            f[i] = xi;
            f[types + i] = zi;
            f[2 * types + i] = xi - zi;
            workload += work * (xi - zi);
            normalized += work * (xi - chain.arrival[i] / chain.service[i]);
            total_need += static_cast<long long>(needs[i]) * xi;
            boundary = boundary || xi == spec.caps[i];
        }
        f[3 * types] = workload;
        f[3 * types + 1] = normalized;
        f[3 * types + 2] = total_need >= config.n ? 1.0 : 0.0;
        f[3 * types + 3] = boundary ? 1.0 : 0.0;
    }
    const auto sums = kernels::weighted_sums_parallel(out.pi, features, k);
    out.mean_x.assign(sums.begin(), sums.begin() + types);
    out.mean_z.assign(sums.begin() + types, sums.begin() + 2 * types);
    out.mean_q.assign(sums.begin() + 2 * types, sums.begin() + 3 * types);
    out.workload = sums[3 * types];
    out.normalized_work = sums[3 * types + 1];
    out.p_queue = sums[3 * types + 2];
    out.tail_mass_bound = sums[3 * types + 3];
    out.certified = out.tail_mass_bound < 1e-8 && out.residual < 1e-10;
    return out;
}

StationarySolution ctmc_stationary_auto(const SystemConfig& config, const Allocation& allocation,
                                        std::size_t max_states) {
    CtmcSpec spec{config, allocation, default_caps(config)};
    for (;;) {
        auto sol = ctmc_stationary(spec);
        if (sol.tail_mass_bound < 1e-8) return sol;
        std::size_t next_states = 1;
        for (auto& c : spec.caps) {
            c = static_cast<int>(std::ceil(c * 1.5));
            next_states *= static_cast<std::size_t>(c + 1);
        }
        if (next_states > max_states) return sol;  // truncation-limited, not certified
    }
}

}  // namespace msj
