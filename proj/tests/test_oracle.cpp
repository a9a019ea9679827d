#include <doctest.h>

#include <stdexcept>

#include <omp.h>

#include "msj/oracle.hpp"
#include "msj/verify.hpp"
#include "oracles.hpp"

using namespace msj;

TEST_CASE("Erlang C against direct summation") {
    const auto a = erlang_c(2, 1.0, 1.0);
    CHECK(a.p_wait == doctest::Approx(oracle::erlang_c_direct(2, 1.0, 1.0)).epsilon(1e-12));
    CHECK(a.mean_wait == doctest::Approx(oracle::mmc_mean_wait(2, 1.0, 1.0)).epsilon(1e-12));

    const auto b = erlang_c(1, 0.5, 1.0);
    CHECK(b.p_wait == doctest::Approx(0.5));
    CHECK(b.mean_wait == doctest::Approx(oracle::mm1_mean_wait(0.5, 1.0)));

    for (int n : {3, 10, 50}) {
        const double lambda = 0.8 * n;
        CHECK(erlang_c(n, lambda, 1.0).p_wait == doctest::Approx(oracle::erlang_c_direct(n, lambda, 1.0)));
    }
    CHECK(erlang_c(5, 1e-9, 1.0).p_wait < 1e-30);
    CHECK_THROWS_AS(erlang_c(2, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("CTMC on single-type chains") {
    SUBCASE("whole-machine M/M/1") {
        const SystemConfig c{4, {{0.5, 1.0, 4}}};
        const auto sol = ctmc_stationary({c, snf_count_allocation(c), {60}});
        CHECK(sol.mean_q[0] == doctest::Approx(oracle::mm1_mean_queue(0.5, 1.0)).epsilon(1e-6));
        CHECK(sol.mean_q[0] / 0.5 == doctest::Approx(oracle::mm1_mean_wait(0.5, 1.0)).epsilon(1e-6));
    }
    SUBCASE("M/M/2 with z = min(x, 2)") {
        const SystemConfig c{2, {{1.0, 1.0, 1}}};
        Allocation alloc = [](std::span<const int> x) { return std::vector<int>{std::min(x[0], 2)}; };
        const auto sol = ctmc_stationary({c, alloc, {80}});
        CHECK(sol.mean_q[0] / 1.0 == doctest::Approx(oracle::mmc_mean_wait(2, 1.0, 1.0)).epsilon(1e-6));
        CHECK(sol.p_queue == doctest::Approx(oracle::erlang_c_direct(2, 1.0, 1.0)).epsilon(1e-6));
    }
}

TEST_CASE("CTMC on the two-type SNF chain") {
    const auto c = two_type_snf_config();
    const auto sol = ctmc_stationary_auto(c, snf_count_allocation(c));
    CHECK(sol.certified);
    CHECK(sol.residual < 1e-10);
    CHECK(sol.tail_mass_bound < 1e-8);
    CHECK(sol.mass_error < 1e-10);
    for (std::size_t i = 0; i < c.num_types(); ++i)
        CHECK(std::abs(sol.mean_z[i] - c.types[i].arrival_rate / c.types[i].service_rate) < 1e-8);
    CHECK(sol.caps == default_caps(c));
}

TEST_CASE("CTMC moments do not depend on the thread count") {
    const auto c = two_type_snf_config();
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto one = ctmc_stationary_auto(c, snf_count_allocation(c));
    omp_set_num_threads(4);
    const auto four = ctmc_stationary_auto(c, snf_count_allocation(c));
    omp_set_num_threads(saved);
    for (std::size_t i = 0; i < c.num_types(); ++i) {
        CHECK(std::abs(one.mean_q[i] - four.mean_q[i]) < 1e-10);
        CHECK(std::abs(one.mean_x[i] - four.mean_x[i]) < 1e-10);
    }
    CHECK(std::abs(one.residual - four.residual) < 1e-14);
}

TEST_CASE("infeasible allocations and caps are rejected") {
    const SystemConfig c{2, {{1.0, 1.0, 1}}};
    Allocation greedy = [](std::span<const int> x) { return std::vector<int>{x[0]}; };
    CHECK_THROWS_AS(ctmc_stationary({c, greedy, {10}}), std::invalid_argument);
    CHECK_THROWS_AS(ctmc_stationary({c, snf_count_allocation(c), {}}), std::invalid_argument);
}
