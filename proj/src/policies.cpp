#include "msj/policies.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace msj {

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::FCFS: return "fcfs";
        case PolicyKind::SNF: return "snf";
        case PolicyKind::SNF_NP: return "snf-np";
        case PolicyKind::ModifiedFCFS: return "mod-fcfs";
        case PolicyKind::InfiniteServer: return "inf";
    }
    return "unknown";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
    for (auto kind : {PolicyKind::FCFS, PolicyKind::SNF, PolicyKind::SNF_NP, PolicyKind::ModifiedFCFS,
                      PolicyKind::InfiniteServer}) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

QueueState QueueState::from_jobs(std::vector<QueuedJob> jobs, std::size_t num_types) {
    QueueState s;
    s.jobs = std::move(jobs);
    s.x.assign(num_types, 0);
    s.z.assign(num_types, 0);
    for (const auto& j : s.jobs) {
        if (j.type_index >= num_types) throw std::out_of_range("job type index out of range");
        ++s.x[j.type_index];
        if (j.in_service) ++s.z[j.type_index];
    }
    return s;
}

long long QueueState::busy(std::span<const int> needs) const {
    long long total = 0;
    for (std::size_t i = 0; i < z.size(); ++i) total += static_cast<long long>(needs[i]) * z[i];
    return total;
}

namespace {

// Shared scan for FCFS and Modified-FCFS: in-service jobs stay, waiting jobs
// are admitted in arrival order while `admit(busy, need)` holds.
template <class Admit>
Schedule fifo_scan(const QueueState& state, std::span<const int> needs, Admit admit) {
    Schedule out;
    long long busy = state.busy(needs);
    bool blocked = false;
    for (const auto& job : state.jobs) {
        if (job.in_service) {
            out.serve.push_back(job.job_id);
            continue;
        }
        if (blocked) continue;
        const int need = needs[job.type_index];
        if (admit(busy, need)) {
            busy += need;
            out.serve.push_back(job.job_id);
        } else {
            blocked = true;
        }
    }
    return out;
}

}  // namespace

Schedule schedule_fcfs(const QueueState& state, std::span<const int> needs, int n) {
    return fifo_scan(state, needs, [n](long long busy, int need) { return busy + need <= n; });
}

Schedule schedule_modified_fcfs(const QueueState& state, std::span<const int> needs, int n, int l_max) {
    return fifo_scan(state, needs, [n, l_max](long long busy, int) { return busy <= n - l_max; });
}

std::vector<int> snf_allocation(std::span<const int> x, std::span<const int> needs, int n) {
    std::vector<int> z(x.size(), 0);
    long long remaining = n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long long fit = remaining / needs[i];
        z[i] = static_cast<int>(std::min<long long>(x[i], fit));
        remaining -= static_cast<long long>(z[i]) * needs[i];
    }
    return z;
}

Schedule schedule_snf(const QueueState& state, std::span<const int> needs, int n) {
    const auto z = snf_allocation(state.x, needs, n);
    std::vector<int> taken(z.size(), 0);
    Schedule out;
    for (const auto& job : state.jobs) {
        if (taken[job.type_index] < z[job.type_index]) {
            ++taken[job.type_index];
            out.serve.push_back(job.job_id);
        }
    }
    return out;
}

Schedule schedule_snf_np(const QueueState& state, std::span<const int> needs, int n) {
    long long idle = n - state.busy(needs);
    std::vector<char> admitted(state.jobs.size(), 0);
    for (;;) {
        // Smallest need first; jobs list is in arrival order so the first
        // match breaks ties by arrival.
        std::size_t pick = state.jobs.size();
        int pick_need = std::numeric_limits<int>::max();
        for (std::size_t k = 0; k < state.jobs.size(); ++k) {
            const auto& job = state.jobs[k];
            if (job.in_service || admitted[k]) continue;
            if (needs[job.type_index] < pick_need) {
                pick_need = needs[job.type_index];
                pick = k;
            }
        }
        if (pick == state.jobs.size() || pick_need > idle) break;
        admitted[pick] = 1;
        idle -= pick_need;
    }
    Schedule out;
    for (std::size_t k = 0; k < state.jobs.size(); ++k) {
        if (state.jobs[k].in_service || admitted[k]) out.serve.push_back(state.jobs[k].job_id);
    }
    return out;
}

Schedule schedule_infinite_server(const QueueState& state) {
    Schedule out;
    out.serve.reserve(state.jobs.size());
    for (const auto& job : state.jobs) out.serve.push_back(job.job_id);
    return out;
}

Schedule schedule(PolicyKind kind, const QueueState& state, std::span<const int> needs, int n, int l_max) {
    switch (kind) {
        case PolicyKind::FCFS: return schedule_fcfs(state, needs, n);
        case PolicyKind::SNF: return schedule_snf(state, needs, n);
        case PolicyKind::SNF_NP: return schedule_snf_np(state, needs, n);
        case PolicyKind::ModifiedFCFS: return schedule_modified_fcfs(state, needs, n, l_max);
        case PolicyKind::InfiniteServer: return schedule_infinite_server(state);
    }
    throw std::invalid_argument("unknown policy");
}

WorkConservationAuditor::WorkConservationAuditor(std::vector<int> needs, int n, double delta_prime)
    : needs_(std::move(needs)), n_(n), delta_prime_(delta_prime) {}

void WorkConservationAuditor::observe(std::span<const int> x, std::span<const int> z) {
    long long busy = 0;
    long long total_need = 0;
    for (std::size_t i = 0; i < needs_.size(); ++i) {
        busy += static_cast<long long>(needs_[i]) * z[i];
        total_need += static_cast<long long>(needs_[i]) * x[i];
    }
    const double floor = std::min(static_cast<double>(total_need), n_ - delta_prime_);
    const double slack = static_cast<double>(busy) - floor;
    ++result_.epochs;
    if (slack < 0.0) ++result_.violations;
    if (!seen_ || slack < result_.worst_slack) result_.worst_slack = slack;
    seen_ = true;
}

AuditResult audit_work_conservation(std::span<const CountSnapshot> trajectory, std::span<const int> needs,
                                    int n, double delta_prime) {
    WorkConservationAuditor auditor({needs.begin(), needs.end()}, n, delta_prime);
    for (const auto& snap : trajectory) auditor.observe(snap.x, snap.z);
    return auditor.result();
}

}  // namespace msj
