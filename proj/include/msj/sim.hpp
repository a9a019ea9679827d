#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "msj/model.hpp"
#include "msj/policies.hpp"

namespace msj {

/// Shared job realization: arrival epochs with unit-rate service draws and types.
/// Job k needs l_{C(k)} servers for S0(k) / mu_{C(k)} time units.
struct JobStream {
    std::uint64_t seed = 0;
    std::vector<double> arrival;       // A(k), strictly increasing
    std::vector<double> unit_service;  // S0(k) ~ Exp(1)
    std::vector<std::uint16_t> type;   // C(k), 0-based

    std::size_t size() const { return arrival.size(); }
    bool operator==(const JobStream&) const = default;
};

JobStream build_job_stream(std::uint64_t seed, std::size_t jobs, const SystemConfig& config);

/// One system in a (possibly coupled) run.
struct SystemSpec {
    PolicyKind policy = PolicyKind::FCFS;
    int servers = 0;

    bool operator==(const SystemSpec&) const = default;
};

struct TailProbe {
    std::vector<double> weights;     // c_i >= 0
    std::vector<double> thresholds;  // K values; tracks time in {Phi <= -K}
};

struct SimOptions {
    double warmup = 0.1;  // fraction of simulated time [0, A(K)] discarded
    int batches = 20;
    double delta_prime = -1.0;  // audit slack; negative selects l_max
    bool record_trajectory = false;
    TailProbe tail_probe;
};

struct TimeAverages {
    std::vector<double> x;
    std::vector<double> z;
    std::vector<double> q;
    double workload = 0.0;
    double queueing = 0.0;  // fraction of time with sum l_i X_i >= servers
    double duration = 0.0;

    bool operator==(const TimeAverages&) const = default;
};

enum class EventKind : std::uint8_t { Arrival, Departure };

struct Epoch {
    double t = 0.0;
    EventKind kind = EventKind::Arrival;
    std::uint16_t type = 0;
    std::vector<int> x;
    std::vector<int> z;

    bool operator==(const Epoch&) const = default;
};

struct SimResult {
    SystemSpec system;
    double warmup = 0.0;
    double window_start = 0.0;
    double window_end = 0.0;
    std::size_t first_measured = 0;  // first job with A(k) >= window_start

    std::vector<double> waits;  // W(k) for every job, warm-up included
    std::vector<double> first_start;
    std::vector<std::uint16_t> job_types;
    std::vector<std::int64_t> window_arrivals;  // per type

    TimeAverages overall;
    std::vector<TimeAverages> batches;
    std::vector<double> tail_fraction;  // per TailProbe threshold

    std::int64_t event_count = 0;
    std::int64_t preemptions = 0;
    AuditResult audit;
    std::vector<Epoch> trajectory;

    bool operator==(const SimResult&) const = default;
};

SimResult simulate(const SystemSpec& system, const SystemConfig& config, const JobStream& stream,
                   const SimOptions& options = {});
SimResult simulate(PolicyKind policy, const SystemConfig& config, const JobStream& stream,
                   const SimOptions& options = {});

/// Same dynamics driven by the pure schedule_* functions over the full job
/// list at every event. Quadratic; kept to cross-check `simulate`.
SimResult simulate_reference(const SystemSpec& system, const SystemConfig& config, const JobStream& stream,
                             const SimOptions& options = {});

std::vector<SimResult> simulate_coupled(std::span<const SystemSpec> systems, const SystemConfig& config,
                                        const JobStream& stream, const SimOptions& options = {});

/// Standard bounding triple around FCFS@n:
/// [Modified-FCFS@(n + l_max), FCFS@n, Modified-FCFS@n].
std::vector<SystemSpec> sandwich_systems(const SystemConfig& config);

/// W_lower(k) <= W(k) <= W_upper(k) for every job, exact comparison.
bool check_sandwich(const SimResult& lower, const SimResult& original, const SimResult& upper);

/// X_inf_i(t) <= X_i(t) per type at every event epoch of either run. Both
/// runs need recorded trajectories.
bool check_infinite_server_dominance(const SimResult& infinite, const SimResult& finite);

/// Writes the trajectory as comma-separated records with a header line:
/// t,kind,type,x_1..x_I,z_1..z_I (type is 1-based).
void write_trajectory_csv(std::ostream& out, const SimResult& result, std::size_t num_types);

}  // namespace msj
