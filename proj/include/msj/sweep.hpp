#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "msj/bounds.hpp"
#include "msj/model.hpp"
#include "msj/policies.hpp"

namespace msj {

struct SweepSpec {
    enum class Source { One, Two, File } source = Source::One;
    std::optional<SystemConfig> file_config;  // Source::File only
    std::vector<int> n_list;
    std::vector<PolicyKind> policies;
    std::vector<std::uint64_t> seeds;
    std::size_t jobs = 2'000'000;
    double warmup = 0.1;
    int batches = 20;
    int workers = 1;
};

/// Throws std::invalid_argument on empty lists or jobs < 20 * batches.
void validate(const SweepSpec& spec);
std::string source_name(SweepSpec::Source source);
SystemConfig sweep_config(const SweepSpec& spec, int n);

struct RunRow {
    int n = 0;
    PolicyKind policy = PolicyKind::FCFS;
    std::uint64_t seed = 0;
    std::string error;  // empty when the run succeeded

    double mean_wait = 0.0;
    double mean_wait_hw = 0.0;
    std::vector<std::optional<double>> wait_per_type;
    double queueing_prob = 0.0;
    double queueing_prob_hw = 0.0;
    double workload = 0.0;
    double workload_hw = 0.0;
    std::vector<double> z_per_type;
    std::vector<double> z_hw_per_type;
    std::int64_t audit_epochs = 0;
    std::int64_t audit_violations = 0;
    std::int64_t events = 0;

    bool operator==(const RunRow&) const = default;
};

struct BoundsRow {
    int n = 0;
    std::string error;
    BoundReport report;

    bool operator==(const BoundsRow&) const = default;
};

struct SweepResult {
    std::vector<RunRow> runs;      // sorted by (n, policy list order, seed)
    std::vector<BoundsRow> bounds;  // one per n

    bool operator==(const SweepResult&) const = default;
};

/// Cells are dispatched over `spec.workers` OpenMP threads.
SweepResult run_sweep(const SweepSpec& spec);
/// One cell at a time, in order. Reference for run_sweep.
SweepResult run_sweep_serial(const SweepSpec& spec);

RunRow run_cell(const SweepSpec& spec, int n, PolicyKind policy, std::uint64_t seed);

/// CSV column list, fixed.
const std::vector<std::string>& sweep_csv_columns();
/// Data rows only (no header, no metadata).
void write_sweep_rows(std::ostream& out, const SweepSpec& spec, const SweepResult& result);
/// '#'-prefixed metadata lines (including a timestamp), header, then rows.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const SweepResult& result);

}  // namespace msj
