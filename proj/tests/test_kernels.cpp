#include <doctest.h>

#include <stdexcept>

#include <omp.h>

#include <random>

#include "msj/kernels.hpp"
#include "msj/oracle.hpp"
#include "msj/verify.hpp"

using namespace msj;

namespace {

kernels::BoxChain snf_chain(int cap0, int cap1) {
    const auto c = two_type_snf_config();
    const auto alloc = snf_count_allocation(c);
    kernels::BoxChain chain;
    chain.dims = {cap0 + 1, cap1 + 1};
    chain.arrival = {c.types[0].arrival_rate, c.types[1].arrival_rate};
    chain.service = {c.types[0].service_rate, c.types[1].service_rate};
    for (int b = 0; b <= cap1; ++b)
        for (int a = 0; a <= cap0; ++a) {
            const int x[2] = {a, b};
            for (int v : alloc(x)) chain.z.push_back(v);
        }
    return chain;
}

}  // namespace

TEST_CASE("balance residual: serial and parallel agree") {
    const auto chain = snf_chain(120, 120);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> pi(chain.num_states());
    for (auto& v : pi) v = u(gen);
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        CHECK(kernels::balance_residual_parallel(chain, pi) == kernels::balance_residual_serial(chain, pi));
    }
}

TEST_CASE("weighted sums: serial and parallel agree to rounding") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t states = 50'000, k = 5;
    std::vector<double> pi(states), f(states * k);
    for (auto& v : pi) v = u(gen);
    for (auto& v : f) v = u(gen);
    const auto s = kernels::weighted_sums_serial(pi, f, k);
    for (int threads : {1, 3}) {
        omp_set_num_threads(threads);
        const auto p = kernels::weighted_sums_parallel(pi, f, k);
        REQUIRE(p.size() == k);
        for (std::size_t j = 0; j < k; ++j) CHECK(p[j] == doctest::Approx(s[j]).epsilon(1e-12));
    }
}

TEST_CASE("residual of the exact stationary vector is tiny") {
    const auto c = two_type_snf_config();
    const auto sol = ctmc_stationary_auto(c, snf_count_allocation(c));
    const auto chain = snf_chain(sol.caps[0], sol.caps[1]);
    CHECK(kernels::balance_residual_serial(chain, sol.pi) < 1e-10);
}
