#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "msj/bounds.hpp"
#include "msj/verify.hpp"
#include "oracles.hpp"

using namespace msj;

TEST_CASE("Set One at n = 64 with delta' = l_max") {
    const auto c = make_param_set(ParamSet::One, 64);
    const auto r = evaluate_bounds(c, 8.0);
    CHECK(*r.workload_lower.value == doctest::Approx(24.0));
    CHECK(*r.workload_upper.value == doctest::Approx(48.0));
    CHECK(*r.fcfs_wait_lower.value == doctest::Approx(384.0 / (64.0 * 24.0)));
    CHECK(*r.fcfs_wait_upper.value == doctest::Approx(0.75));
    CHECK(r.indices.i_star == 3);
    CHECK(*r.snf_upper.value == doctest::Approx(3.0 / 22.0 * 384.0 / 64.0));
    CHECK(r.qp_exponent == doctest::Approx(16.0 * 16.0 / (64.0 * 8.0)));
    REQUIRE(r.snf_general.size() == 3);
}

TEST_CASE("M/M/2 universal lower bound is flagged out of regime") {
    // l_max equals delta here, so the second proxy fails.
    const SystemConfig c{2, {{1.0, 1.0, 1}}};
    const auto r = evaluate_bounds(c, 1.0);
    CHECK(*r.universal_lower.value == doctest::Approx(1.0));
    CHECK(r.universal_argmax == 1);
    CHECK(r.assumptions.a1_ratio == doctest::Approx(std::log(2.0)));
    CHECK(r.assumptions.a2_ratio == doctest::Approx(1.0));
    CHECK_FALSE(r.assumptions.holds[1]);
    CHECK_FALSE(r.workload_upper.present());
    CHECK_FALSE(r.fcfs_wait_upper.present());
    CHECK_FALSE(r.workload_upper.absent_reason.empty());
}

TEST_CASE("infinite-server tail bounds") {
    const auto c = make_param_set(ParamSet::One, 64);
    const auto w = workload_weights(c);
    CHECK(mminf_tail(c, w, 0.0) == 1.0);
    CHECK(mminf_tail(c, w, 100.0) == doctest::Approx(std::exp(-10000.0 / (2.0 * 16.0 * 384.0))));
    CHECK(mminf_tail(c, w, 100.0) == doctest::Approx(0.4432).epsilon(1e-4));
    CHECK(mminf_negative_part(c, w) == doctest::Approx(std::sqrt(16.0 * 384.0)));
    CHECK(mminf_negative_part(c, w) == doctest::Approx(78.38).epsilon(1e-4));
    CHECK(mminf_tail_linear(c, w, 80.0, 80.0, 2.0) == doctest::Approx(std::exp(-2.0)));
    CHECK_THROWS_AS(mminf_tail_linear(c, w, 10.0, 10.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mminf_tail(c, w, -1.0), std::invalid_argument);
}

TEST_CASE("regime orders") {
    const auto o = regime_orders(4096, 0.5, 0.5);
    CHECK(o.fcfs == doctest::Approx(1.0));
    CHECK(o.snf == doctest::Approx(1.0 / 64.0));
    CHECK_FALSE(o.interior);

    const auto hw = regime_orders(4096, 0.5, 0.0);
    CHECK(hw.fcfs_exponent == doctest::Approx(-0.5));
    CHECK(hw.fcfs_exponent == doctest::Approx(hw.snf_exponent));

    CHECK(regime_orders(4096, 0.6, 0.3).interior);
    CHECK_THROWS_AS(regime_orders(4096, 0.25, 0.5), std::invalid_argument);
}

TEST_CASE("bound ordering sanity over Set One and Set Two") {
    for (auto set : {ParamSet::One, ParamSet::Two}) {
        for (int n : {64, 256, 1024, 4096}) {
            const auto c = make_param_set(set, n);
            const auto r = evaluate_bounds(c, c.l_max());
            CHECK(*r.workload_lower.value <= *r.workload_upper.value);
            CHECK(*r.fcfs_wait_lower.value <= *r.fcfs_wait_upper.value);
            CHECK(r.indices.i_star_1 <= r.indices.i_star);
        }
    }
}
