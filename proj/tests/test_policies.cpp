#include <doctest.h>

#include <stdexcept>

#include <random>

#include "msj/policies.hpp"

using namespace msj;

namespace {

// Builds a queue state from (type, in_service) pairs in arrival order.
QueueState state_of(std::initializer_list<std::pair<std::size_t, bool>> jobs, std::size_t types) {
    std::vector<QueuedJob> list;
    std::int64_t id = 0;
    for (const auto& [type, serving] : jobs) list.push_back({id++, type, serving});
    return QueueState::from_jobs(std::move(list), types);
}

std::vector<std::int64_t> ids(const Schedule& s) { return s.serve; }

}  // namespace

TEST_CASE("policy names round-trip") {
    for (auto k : {PolicyKind::FCFS, PolicyKind::SNF, PolicyKind::SNF_NP, PolicyKind::ModifiedFCFS,
                   PolicyKind::InfiniteServer})
        CHECK(parse_policy(to_string(k)) == k);
    CHECK_FALSE(parse_policy("lifo").has_value());
    CHECK(is_preemptive(PolicyKind::SNF));
    CHECK_FALSE(is_preemptive(PolicyKind::FCFS));
}

TEST_CASE("FCFS stops at the first job that does not fit") {
    const std::vector<int> needs13{1, 3};
    SUBCASE("need-3 job first on three servers") {
        // Job 0 is type 2 (need 3), job 1 is type 1 (need 1).
        const auto s = state_of({{1, false}, {0, false}}, 2);
        const auto out = schedule_fcfs(s, needs13, 3);
        CHECK(ids(out) == std::vector<std::int64_t>{0});
    }
    SUBCASE("three need-2 jobs on five servers") {
        const std::vector<int> needs2{2};
        const auto s = state_of({{0, false}, {0, false}, {0, false}}, 1);
        CHECK(ids(schedule_fcfs(s, needs2, 5)) == std::vector<std::int64_t>{0, 1});
    }
    SUBCASE("empty queue") {
        const auto s = state_of({}, 2);
        CHECK(schedule_fcfs(s, needs13, 3).serve.empty());
    }
    SUBCASE("head-of-line blocking even when a later job fits") {
        const auto s = state_of({{1, true}, {1, false}, {0, false}}, 2);
        CHECK(ids(schedule_fcfs(s, needs13, 5)) == std::vector<std::int64_t>{0});
    }
}

TEST_CASE("SNF packing on counts") {
    const std::vector<int> needs{1, 3};
    CHECK(snf_allocation(std::vector<int>{2, 2}, needs, 5) == std::vector<int>{2, 1});
    CHECK(snf_allocation(std::vector<int>{0, 2}, needs, 4) == std::vector<int>{0, 1});
    CHECK(snf_allocation(std::vector<int>{0, 0}, needs, 4) == std::vector<int>{0, 0});
}

TEST_CASE("SNF schedule preempts larger jobs for smaller ones") {
    const std::vector<int> needs{1, 3};
    // A need-3 job in service on four servers; two need-1 jobs arrive.
    const auto s = state_of({{1, true}, {0, false}, {0, false}}, 2);
    CHECK(ids(schedule_snf(s, needs, 4)) == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("SNF-NP admits smallest need first without preemption") {
    const std::vector<int> needs{1, 3};
    SUBCASE("one need-3 job in service, waiting [3, 1] on five servers") {
        const auto s = state_of({{1, true}, {1, false}, {0, false}}, 2);
        CHECK(ids(schedule_snf_np(s, needs, 5)) == std::vector<std::int64_t>{0, 2});
    }
    SUBCASE("nothing waiting") {
        const auto s = state_of({{1, true}}, 2);
        CHECK(ids(schedule_snf_np(s, needs, 5)) == std::vector<std::int64_t>{0});
    }
    SUBCASE("idle six, waiting [3, 1, 3]") {
        const auto s = state_of({{1, false}, {0, false}, {1, false}}, 2);
        CHECK(ids(schedule_snf_np(s, needs, 6)) == std::vector<std::int64_t>{0, 1});
    }
}

TEST_CASE("Modified-FCFS admits only with l_max idle servers") {
    const std::vector<int> needs{1, 2, 3};
    SUBCASE("busy 3 of 5, head need 1") {
        const auto s = state_of({{2, true}, {0, false}}, 3);
        CHECK(ids(schedule_modified_fcfs(s, needs, 5, 3)) == std::vector<std::int64_t>{0});
    }
    SUBCASE("busy 2 of 5, head need 3") {
        const auto s = state_of({{1, true}, {2, false}}, 3);
        CHECK(ids(schedule_modified_fcfs(s, needs, 5, 3)) == std::vector<std::int64_t>{0, 1});
    }
    SUBCASE("empty system admits the head") {
        for (std::size_t t = 0; t < 3; ++t) {
            const auto s = QueueState::from_jobs({{0, t, false}}, 3);
            CHECK(ids(schedule_modified_fcfs(s, needs, 5, 3)) == std::vector<std::int64_t>{0});
        }
    }
}

TEST_CASE("infinite server serves everyone") {
    const auto s = state_of({{0, false}, {1, false}, {1, true}}, 2);
    CHECK(schedule_infinite_server(s).serve.size() == 3);
}

TEST_CASE("work-conservation audit") {
    const std::vector<int> needs{1, 3};
    SUBCASE("idle system with jobs waiting is a violation at delta' = 0") {
        const std::vector<CountSnapshot> traj{{{2, 1}, {0, 0}}};
        const auto r = audit_work_conservation(traj, needs, 5, 0.0);
        CHECK(r.violations >= 1);
        CHECK(r.worst_slack < 0.0);
    }
    SUBCASE("greedy schedules never violate at delta' = l_max") {
        std::mt19937 gen(7);
        for (auto kind : {PolicyKind::FCFS, PolicyKind::SNF, PolicyKind::SNF_NP}) {
            std::vector<CountSnapshot> traj;
            for (int trial = 0; trial < 500; ++trial) {
                std::vector<QueuedJob> jobs;
                const int count = static_cast<int>(gen() % 8);
                for (int j = 0; j < count; ++j) jobs.push_back({j, gen() % 2, false});
                const auto s = QueueState::from_jobs(jobs, 2);
                const auto out = schedule(kind, s, needs, 7, 3);
                for (auto& j : jobs) j.in_service = false;
                for (auto id : out.serve) jobs[static_cast<std::size_t>(id)].in_service = true;
                const auto after = QueueState::from_jobs(jobs, 2);
                traj.push_back({after.x, after.z});
            }
            const auto r = audit_work_conservation(traj, needs, 7, 3.0);
            CHECK(r.epochs == 500);
            CHECK(r.violations == 0);
        }
    }
}
