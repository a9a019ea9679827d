#include <doctest.h>

#include <stdexcept>

#include <random>

#include "msj/rng.hpp"
#include "msj/stats.hpp"
#include "checks.hpp"
#include "oracles.hpp"

using namespace msj;

TEST_CASE("t quantile") {
    CHECK(student_t_975(19) == doctest::Approx(2.093024).epsilon(1e-6));
    CHECK(student_t_975(1) == doctest::Approx(12.7062).epsilon(1e-5));
    CHECK_THROWS(student_t_975(0));
}

TEST_CASE("constant series") {
    const std::vector<double> v(400, 2.5);
    const auto e = batch_means(v);
    CHECK(e.mean == 2.5);
    CHECK(e.half_width == 0.0);
    CHECK(e.batches == 20);
}

TEST_CASE("too few samples") {
    const std::vector<double> v(10, 1.0);
    CHECK_THROWS_AS(batch_means(v, 20), std::invalid_argument);
    CHECK_THROWS_AS(batch_means(v, 1), std::invalid_argument);
}

TEST_CASE("leading remainder is dropped") {
    // 41 samples into 20 batches: the first value is discarded.
    std::vector<double> v(41, 1.0);
    v[0] = 1000.0;
    CHECK(batch_means(v).mean == 1.0);
}

TEST_CASE("coverage on i.i.d. exponential samples") {
    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::vector<double> v(200'000);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = counter_exponential(seed, StreamRole::Service, k, 0);
        if (batch_means(v).contains(1.0)) ++covered;
    }
    CHECK(covered >= 95);
}

TEST_CASE("mean waiting time") {
    SUBCASE("M/M/2") {
        const SystemConfig c{2, {{1.0, 1.0, 1}}};
        const auto r = simulate(PolicyKind::FCFS, c, build_job_stream(31, 400'000, c));
        const auto w = mean_waiting_time(r, c);
        REQUIRE(w.overall);
        CHECK(within_three_se(*w.overall, oracle::mmc_mean_wait(2, 1.0, 1.0)));
        CHECK(w.per_type.size() == 1);
        CHECK(w.weighted_direct == doctest::Approx(w.overall_direct));
    }
    SUBCASE("single job") {
        const SystemConfig c{2, {{1.0, 1.0, 1}}};
        SimOptions o;
        o.warmup = 0.0;
        const auto r = simulate(PolicyKind::FCFS, c, build_job_stream(31, 1, c), o);
        const auto w = mean_waiting_time(r, c);
        CHECK(r.waits == std::vector<double>{0.0});
        CHECK(w.overall_direct == 0.0);
        CHECK_FALSE(w.overall.has_value());
    }
}

TEST_CASE("queueing probability") {
    SUBCASE("M/M/2 matches Erlang C") {
        const SystemConfig c{2, {{1.0, 1.0, 1}}};
        const auto r = simulate(PolicyKind::FCFS, c, build_job_stream(32, 400'000, c));
        CHECK(within_three_se(queueing_probability(r), oracle::erlang_c_direct(2, 1.0, 1.0)));
    }
    SUBCASE("whole-machine M/M/1 at rho = 0.9") {
        const SystemConfig c{3, {{0.9, 1.0, 3}}};
        const auto r = simulate(PolicyKind::FCFS, c, build_job_stream(33, 2'000'000, c));
        CHECK(within_three_se(queueing_probability(r), 0.9));
    }
    SUBCASE("near-empty load") {
        const SystemConfig c{4, {{1e-6, 1.0, 1}}};
        const auto r = simulate(PolicyKind::FCFS, c, build_job_stream(34, 2000, c));
        CHECK(queueing_probability(r).mean == 0.0);
    }
}

TEST_CASE("time averages are consistent") {
    const auto c = make_param_set(ParamSet::One, 64);
    const auto r = simulate(PolicyKind::FCFS, c, build_job_stream(35, 200'000, c));
    for (std::size_t i = 0; i < c.num_types(); ++i) {
        const auto x = time_average_x(r, i), z = time_average_z(r, i), q = time_average_q(r, i);
        CHECK(x.mean == doctest::Approx(z.mean + q.mean));
    }
    double work = 0.0;
    for (std::size_t i = 0; i < c.num_types(); ++i)
        work += c.types[i].server_need / c.types[i].service_rate * time_average_q(r, i).mean;
    CHECK(time_average_workload(r).mean == doctest::Approx(work));
    double fractions = 0.0;
    for (std::size_t i = 0; i < c.num_types(); ++i) fractions += queue_fraction(r, i).mean;
    CHECK(fractions == doctest::Approx(1.0));
}
