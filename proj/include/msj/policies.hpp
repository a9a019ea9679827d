#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace msj {

enum class PolicyKind { FCFS, SNF, SNF_NP, ModifiedFCFS, InfiniteServer };

std::string_view to_string(PolicyKind kind);
/// Accepts the CLI spellings fcfs, snf, snf-np, mod-fcfs, inf.
std::optional<PolicyKind> parse_policy(std::string_view name);
/// True for policies that may interrupt a job in service.
constexpr bool is_preemptive(PolicyKind kind) { return kind == PolicyKind::SNF; }

struct QueuedJob {
    std::int64_t job_id = 0;
    std::size_t type_index = 0;  // 0-based
    bool in_service = false;
};

/// Jobs in the system in arrival order, with per-type totals (x) and
/// in-service counts (z).
struct QueueState {
    std::vector<QueuedJob> jobs;
    std::vector<int> x;
    std::vector<int> z;

    static QueueState from_jobs(std::vector<QueuedJob> jobs, std::size_t num_types);
    /// Busy servers, sum over types of l_i z_i.
    long long busy(std::span<const int> needs) const;
};

/// Job ids that should be in service after the decision, in arrival order.
struct Schedule {
    std::vector<std::int64_t> serve;
};

Schedule schedule_fcfs(const QueueState& state, std::span<const int> needs, int n);
Schedule schedule_snf(const QueueState& state, std::span<const int> needs, int n);
Schedule schedule_snf_np(const QueueState& state, std::span<const int> needs, int n);
Schedule schedule_modified_fcfs(const QueueState& state, std::span<const int> needs, int n, int l_max);
Schedule schedule_infinite_server(const QueueState& state);

/// Dispatches on kind; l_max is only read by Modified-FCFS.
Schedule schedule(PolicyKind kind, const QueueState& state, std::span<const int> needs, int n, int l_max);

/// SNF greedy packing on counts alone: z_i = min(x_i, floor(remaining / l_i)).
std::vector<int> snf_allocation(std::span<const int> x, std::span<const int> needs, int n);

struct AuditResult {
    std::int64_t epochs = 0;
    std::int64_t violations = 0;
    /// Smallest value of busy - min(total need, n - delta') seen; negative
    /// means a violation.
    double worst_slack = 0.0;

    bool operator==(const AuditResult&) const = default;
};

/// Online form of the work-conservation audit.
class WorkConservationAuditor {
public:
    WorkConservationAuditor(std::vector<int> needs, int n, double delta_prime);

    void observe(std::span<const int> x, std::span<const int> z);
    const AuditResult& result() const { return result_; }

private:
    std::vector<int> needs_;
    int n_;
    double delta_prime_;
    AuditResult result_;
    bool seen_ = false;
};

struct CountSnapshot {
    std::vector<int> x;
    std::vector<int> z;
};

AuditResult audit_work_conservation(std::span<const CountSnapshot> trajectory, std::span<const int> needs,
                                    int n, double delta_prime);

}  // namespace msj
