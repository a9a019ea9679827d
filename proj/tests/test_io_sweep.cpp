#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "msj/io.hpp"
#include "msj/sweep.hpp"

using namespace msj;

#ifndef MSJ_GOLDEN_DIR
#error "MSJ_GOLDEN_DIR must point at tests/golden"
#endif

TEST_CASE("config JSON uses the fixed field names") {
    const auto c = make_param_set(ParamSet::One, 64);
    const auto doc = config_to_json(c);
    CHECK(doc.at("n") == 64);
    CHECK(doc.at("types").size() == 3);
    CHECK(doc.at("types")[1].at("l") == 6);
    CHECK(doc.at("types")[0].at("mu") == 0.25);
    CHECK(doc.at("types")[0].contains("lambda"));
    CHECK(config_from_json(doc) == c);
}

TEST_CASE("config parsing sorts by need and validates") {
    const auto doc = nlohmann::json::parse(R"({"n": 6, "types": [{"lambda": 0.5, "mu": 1, "l": 3},
                                                                   {"lambda": 1, "mu": 1, "l": 1}]})");
    const auto c = config_from_json(doc);
    CHECK(c.needs() == std::vector<int>{1, 3});
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n": 6})")), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n": 1, "types": [{"lambda": 5, "mu": 1, "l": 1}]})")),
                    std::invalid_argument);
}

TEST_CASE("config files round-trip") {
    const auto path = std::filesystem::temp_directory_path() / "msj_config_roundtrip.json";
    const auto c = make_param_set(ParamSet::Two, 256);
    save_config(path, c);
    CHECK(load_config(path) == c);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config(path), std::invalid_argument);
}

TEST_CASE("bound reports round-trip through JSON") {
    for (const auto& c : {make_param_set(ParamSet::One, 64), SystemConfig{2, {{1.0, 1.0, 1}}}}) {
        const auto r = evaluate_bounds(c, c.l_max());
        const auto doc = bounds_to_json(r);
        CHECK(bounds_from_json(doc) == r);
        for (const char* key : {"workload_lower", "workload_upper", "fcfs_wait_lower", "fcfs_wait_upper",
                                "universal_lower", "snf_upper", "qp_exponent", "assumptions", "indices"})
            CHECK(doc.contains(key));
    }
    const auto doc = bounds_to_json(evaluate_bounds(SystemConfig{2, {{1.0, 1.0, 1}}}, 1.0));
    CHECK(doc.at("workload_upper").contains("absent"));
}

namespace {

SweepSpec small_spec(int workers) {
    SweepSpec spec;
    spec.n_list = {64, 256};
    spec.policies = {PolicyKind::FCFS, PolicyKind::SNF, PolicyKind::SNF_NP};
    spec.seeds = {1, 2};
    spec.jobs = 20'000;
    spec.workers = workers;
    return spec;
}

std::string rows_of(const SweepSpec& spec, const SweepResult& r) {
    std::ostringstream out;
    write_sweep_rows(out, spec, r);
    return out.str();
}

}  // namespace

TEST_CASE("sweep CSV header matches the golden file") {
    std::ifstream golden(std::string(MSJ_GOLDEN_DIR) + "/sweep_header.csv");
    REQUIRE(golden);
    std::string expected;
    std::getline(golden, expected);

    const auto spec = small_spec(1);
    std::ostringstream out;
    write_sweep_csv(out, spec, run_sweep_serial(spec));
    std::istringstream in(out.str());
    std::string line;
    while (std::getline(in, line) && line.rfind('#', 0) == 0) {
    }
    CHECK(line == expected);
}

TEST_CASE("sweep rows: parallel equals serial, and reruns are byte-identical") {
    const auto serial_spec = small_spec(1);
    const auto parallel_spec = small_spec(4);
    const auto serial = run_sweep_serial(serial_spec);
    const auto parallel = run_sweep(parallel_spec);
    CHECK(serial == parallel);
    CHECK(rows_of(serial_spec, serial) == rows_of(parallel_spec, parallel));
    CHECK(rows_of(serial_spec, run_sweep(serial_spec)) == rows_of(serial_spec, serial));
    CHECK(serial.runs.size() == 2 * 3 * 2);
    CHECK(serial.bounds.size() == 2);
    for (const auto& r : serial.runs) {
        CHECK(r.error.empty());
        CHECK(r.wait_per_type.size() == 3);
    }
}

TEST_CASE("sweep validation and in-row failures") {
    auto spec = small_spec(1);
    spec.n_list.clear();
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec = small_spec(1);
    spec.jobs = 100;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

    spec = small_spec(1);
    spec.n_list = {32, 64};
    const auto r = run_sweep(spec);
    CHECK_FALSE(r.runs.front().error.empty());
    CHECK(r.runs.back().error.empty());
    CHECK_FALSE(r.bounds.front().error.empty());
    const auto rows = rows_of(spec, r);
    CHECK(rows.find("error: ") != std::string::npos);
}

TEST_CASE("file-sourced sweep uses the config's n") {
    SweepSpec spec = small_spec(1);
    spec.source = SweepSpec::Source::File;
    spec.file_config = SystemConfig{6, {{1.0, 1.0, 1}, {0.5, 1.0, 3}}};
    spec.n_list.clear();
    const auto r = run_sweep(spec);
    CHECK(r.bounds.size() == 1);
    CHECK(r.bounds[0].n == 6);
    for (const auto& row : r.runs) CHECK(row.error.empty());
}
