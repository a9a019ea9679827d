#include "msj/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <ostream>
#include <queue>
#include <set>
#include <stdexcept>

#include "msj/rng.hpp"

namespace msj {

JobStream build_job_stream(std::uint64_t seed, std::size_t jobs, const SystemConfig& config) {
    validate(config);
    if (jobs < 1) throw std::invalid_argument("job stream needs at least one job");
    if (config.num_types() > 0xffff) throw std::invalid_argument("too many job types");

    double lambda = 0.0;
    for (const auto& t : config.types) lambda += t.arrival_rate;
    std::vector<double> cumulative;
    double acc = 0.0;
    for (const auto& t : config.types) {
        acc += t.arrival_rate;
        cumulative.push_back(acc / lambda);
    }

    JobStream s;
    s.seed = seed;
    s.arrival.resize(jobs);
    s.unit_service.resize(jobs);
    s.type.resize(jobs);
    double now = 0.0;
    for (std::size_t k = 0; k < jobs; ++k) {
        now += counter_exponential(seed, StreamRole::InterArrival, k) / lambda;
        s.arrival[k] = now;
        s.unit_service[k] = counter_exponential(seed, StreamRole::Service, k);
        const double u = counter_uniform(seed, StreamRole::JobType, k);
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end() - 1, u);
        s.type[k] = static_cast<std::uint16_t>(it - cumulative.begin());
    }
    return s;
}

namespace {

struct Departure {
    double t;
    std::int64_t job;
    std::uint32_t epoch;

    bool operator>(const Departure& o) const { return t != o.t ? t > o.t : job > o.job; }
};

struct BatchSums {
    std::vector<double> x, z, q;
    double workload = 0.0;
    double queueing = 0.0;
    double duration = 0.0;
};

class Engine {
public:
    Engine(const SystemSpec& system, const SystemConfig& config, const JobStream& stream,
           const SimOptions& options)
        : system_(system),
          config_(config),
          stream_(stream),
          options_(options),
          needs_(config.needs()),
          mu_(config.service_rates()),
          l_max_(config.l_max()),
          num_types_(config.num_types()),
          auditor_(needs_, system.servers, options.delta_prime < 0.0 ? config.l_max() : options.delta_prime) {
        validate(config);
        if (options.batches < 1) throw std::invalid_argument("batch count must be positive");
        if (!(options.warmup >= 0.0 && options.warmup < 1.0))
            throw std::invalid_argument("warm-up fraction must lie in [0, 1)");
        if (stream.size() == 0) throw std::invalid_argument("job stream is empty");
        if (system.policy != PolicyKind::InfiniteServer && system.servers < l_max_)
            throw std::invalid_argument("a job's server need exceeds the number of servers");
        for (auto c : stream.type)
            if (c >= num_types_) throw std::invalid_argument("job stream does not match the config's types");
        if (!options.tail_probe.thresholds.empty() && options.tail_probe.weights.size() != num_types_)
            throw std::invalid_argument("tail probe needs one weight per type");

        window_end_ = stream.arrival.back();
        window_start_ = options.warmup * window_end_;
        if (!(window_end_ - window_start_ > 0.0)) throw std::invalid_argument("post-warm-up window is empty");
        batch_width_ = (window_end_ - window_start_) / options.batches;

        const std::size_t jobs = stream.size();
        waits_.assign(jobs, 0.0);
        first_start_.assign(jobs, -1.0);
        wait_since_.assign(jobs, 0.0);
        epoch_.assign(jobs, 0);
        resumes_.assign(jobs, 0);
        in_service_.assign(jobs, 0);
        x_.assign(num_types_, 0);
        z_.assign(num_types_, 0);
        sums_.resize(options.batches);
        for (auto& b : sums_) {
            b.x.assign(num_types_, 0.0);
            b.z.assign(num_types_, 0.0);
            b.q.assign(num_types_, 0.0);
        }
        tail_time_.assign(options.tail_probe.thresholds.size(), 0.0);
        phi_offset_ = 0.0;
        for (std::size_t i = 0; i < options.tail_probe.weights.size(); ++i) {
            phi_offset_ += options.tail_probe.weights[i] * needs_[i] * config.types[i].arrival_rate / mu_[i];
        }
    }

    // Scheduler-facing state.
    std::span<const int> x() const { return x_; }
    std::span<const int> z() const { return z_; }
    std::span<const int> needs() const { return needs_; }
    long long busy() const { return busy_; }
    int servers() const { return system_.servers; }
    int l_max() const { return l_max_; }
    std::size_t num_types() const { return num_types_; }
    std::size_t type_of(std::int64_t job) const { return stream_.type[job]; }
    bool in_service(std::int64_t job) const { return in_service_[job] != 0; }

    void start(std::int64_t job) {
        const std::size_t c = stream_.type[job];
        double duration;
        if (first_start_[job] < 0.0) {
            first_start_[job] = now_;
            duration = stream_.unit_service[job] / mu_[c];
        } else {
            duration = counter_exponential(stream_.seed, StreamRole::Resume, job, resumes_[job]) / mu_[c];
        }
        waits_[job] += now_ - wait_since_[job];
        in_service_[job] = 1;
        ++z_[c];
        busy_ += needs_[c];
        departures_.push({now_ + duration, job, epoch_[job]});
    }

    void preempt(std::int64_t job) {
        const std::size_t c = stream_.type[job];
        ++epoch_[job];
        ++resumes_[job];
        ++preemptions_;
        wait_since_[job] = now_;
        in_service_[job] = 0;
        --z_[c];
        busy_ -= needs_[c];
    }

    template <class Scheduler>
    SimResult run(Scheduler& scheduler) {
        const std::size_t jobs = stream_.size();
        std::size_t next = 0;
        for (;;) {
            while (!departures_.empty() && departures_.top().epoch != epoch_[departures_.top().job])
                departures_.pop();
            const bool have_departure = !departures_.empty();
            if (!have_departure && next == jobs) break;
            const bool take_departure =
                have_departure && (next == jobs || departures_.top().t <= stream_.arrival[next]);

            EventKind kind;
            std::int64_t job;
            if (take_departure) {
                const Departure d = departures_.top();
                departures_.pop();
                advance(d.t);
                job = d.job;
                kind = EventKind::Departure;
                const std::size_t c = stream_.type[job];
                in_service_[job] = 0;
                --x_[c];
                --z_[c];
                busy_ -= needs_[c];
                total_need_ -= needs_[c];
                scheduler.on_departure(*this, job);
            } else {
                advance(stream_.arrival[next]);
                job = static_cast<std::int64_t>(next++);
                kind = EventKind::Arrival;
                const std::size_t c = stream_.type[job];
                wait_since_[job] = now_;
                ++x_[c];
                total_need_ += needs_[c];
                scheduler.on_arrival(*this, job);
            }
            scheduler.reschedule(*this);
            ++event_count_;
            if (now_ >= window_start_ && now_ <= window_end_) auditor_.observe(x_, z_);
            if (options_.record_trajectory) {
                trajectory_.push_back({now_, kind, stream_.type[job], x_, z_});
            }
        }
        return finish();
    }

private:
    void advance(double t) {
        double a = std::max(now_, window_start_);
        const double b = std::min(t, window_end_);
        while (a < b) {
            while (batch_ + 1 < sums_.size() && a >= batch_boundary(batch_)) ++batch_;
            const double seg_end = std::min(b, batch_boundary(batch_));
            accumulate(sums_[batch_], seg_end - a);
            a = seg_end;
        }
        now_ = t;
    }

    double batch_boundary(std::size_t b) const {
        return b + 1 == sums_.size() ? window_end_ : window_start_ + (b + 1) * batch_width_;
    }

    void accumulate(BatchSums& s, double dt) {
        if (dt <= 0.0) return;
        double workload = 0.0;
        double phi = -phi_offset_;
        for (std::size_t i = 0; i < num_types_; ++i) {
            const int queued = x_[i] - z_[i];
            s.x[i] += x_[i] * dt;
            s.z[i] += z_[i] * dt;
            s.q[i] += queued * dt;
            workload += needs_[i] / mu_[i] * queued;
        }
        s.workload += workload * dt;
        if (total_need_ >= system_.servers) s.queueing += dt;
        s.duration += dt;
        if (!tail_time_.empty()) {
            for (std::size_t i = 0; i < num_types_; ++i)
                phi += options_.tail_probe.weights[i] * needs_[i] * x_[i];
            for (std::size_t k = 0; k < tail_time_.size(); ++k)
                if (phi <= -options_.tail_probe.thresholds[k]) tail_time_[k] += dt;
        }
    }

    static TimeAverages normalize(const BatchSums& s) {
        TimeAverages t;
        t.duration = s.duration;
        const double inv = s.duration > 0.0 ? 1.0 / s.duration : 0.0;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            t.x.push_back(s.x[i] * inv);
            t.z.push_back(s.z[i] * inv);
            t.q.push_back(s.q[i] * inv);
        }
        t.workload = s.workload * inv;
        t.queueing = s.queueing * inv;
        return t;
    }

    SimResult finish() {
        SimResult r;
        r.system = system_;
        r.warmup = options_.warmup;
        r.window_start = window_start_;
        r.window_end = window_end_;
        r.first_measured = static_cast<std::size_t>(
            std::lower_bound(stream_.arrival.begin(), stream_.arrival.end(), window_start_) -
            stream_.arrival.begin());
        r.window_arrivals.assign(num_types_, 0);
        for (std::size_t k = r.first_measured; k < stream_.size(); ++k) ++r.window_arrivals[stream_.type[k]];
        r.waits = std::move(waits_);
        r.first_start = std::move(first_start_);
        r.job_types = stream_.type;

        BatchSums total;
        total.x.assign(num_types_, 0.0);
        total.z.assign(num_types_, 0.0);
        total.q.assign(num_types_, 0.0);
        for (const auto& b : sums_) {
            r.batches.push_back(normalize(b));
            for (std::size_t i = 0; i < num_types_; ++i) {
                total.x[i] += b.x[i];
                total.z[i] += b.z[i];
                total.q[i] += b.q[i];
            }
            total.workload += b.workload;
            total.queueing += b.queueing;
            total.duration += b.duration;
        }
        r.overall = normalize(total);
        for (double t : tail_time_) r.tail_fraction.push_back(total.duration > 0.0 ? t / total.duration : 0.0);
        r.event_count = event_count_;
        r.preemptions = preemptions_;
        r.audit = auditor_.result();
        r.trajectory = std::move(trajectory_);
        return r;
    }

    SystemSpec system_;
    const SystemConfig& config_;
    const JobStream& stream_;
    const SimOptions& options_;
    std::vector<int> needs_;
    std::vector<double> mu_;
    int l_max_;
    std::size_t num_types_;
    WorkConservationAuditor auditor_;

    double now_ = 0.0;
    double window_start_ = 0.0;
    double window_end_ = 0.0;
    double batch_width_ = 0.0;
    std::size_t batch_ = 0;
    double phi_offset_ = 0.0;

    std::vector<double> waits_, first_start_, wait_since_;
    std::vector<std::uint32_t> epoch_, resumes_;
    std::vector<char> in_service_;
    std::vector<int> x_, z_;
    long long busy_ = 0;
    long long total_need_ = 0;

    std::priority_queue<Departure, std::vector<Departure>, std::greater<>> departures_;
    std::vector<BatchSums> sums_;
    std::vector<double> tail_time_;
    std::vector<Epoch> trajectory_;
    std::int64_t event_count_ = 0;
    std::int64_t preemptions_ = 0;
};

// FCFS and Modified-FCFS share one global FIFO.
class FifoScheduler {
public:
    explicit FifoScheduler(bool modified) : modified_(modified) {}

    void on_arrival(Engine&, std::int64_t job) { waiting_.push_back(job); }
    void on_departure(Engine&, std::int64_t) {}
    void reschedule(Engine& e) {
        while (!waiting_.empty()) {
            const std::int64_t job = waiting_.front();
            const int need = e.needs()[e.type_of(job)];
            const bool admit = modified_ ? e.busy() <= e.servers() - e.l_max() : e.busy() + need <= e.servers();
            if (!admit) break;
            waiting_.pop_front();
            e.start(job);
        }
    }

private:
    bool modified_;
    std::deque<std::int64_t> waiting_;
};

class InfiniteScheduler {
public:
    void on_arrival(Engine& e, std::int64_t job) { e.start(job); }
    void on_departure(Engine&, std::int64_t) {}
    void reschedule(Engine&) {}
};

// Per-type FIFOs; in service within a type are always the earliest arrivals.
class SnfScheduler {
public:
    explicit SnfScheduler(std::size_t types) : waiting_(types), serving_(types) {}

    void on_arrival(Engine& e, std::int64_t job) { waiting_[e.type_of(job)].push_back(job); }
    void on_departure(Engine& e, std::int64_t job) { serving_[e.type_of(job)].erase(job); }
    void reschedule(Engine& e) {
        const auto target = snf_allocation(e.x(), e.needs(), e.servers());
        for (std::size_t i = 0; i < target.size(); ++i) {
            while (e.z()[i] > target[i]) {
                const std::int64_t job = *serving_[i].rbegin();
                serving_[i].erase(std::prev(serving_[i].end()));
                e.preempt(job);
                waiting_[i].push_front(job);
            }
        }
        for (std::size_t i = 0; i < target.size(); ++i) {
            while (e.z()[i] < target[i]) {
                const std::int64_t job = waiting_[i].front();
                waiting_[i].pop_front();
                serving_[i].insert(job);
                e.start(job);
            }
        }
    }

private:
    std::vector<std::deque<std::int64_t>> waiting_;
    std::vector<std::set<std::int64_t>> serving_;
};

class SnfNonPreemptiveScheduler {
public:
    explicit SnfNonPreemptiveScheduler(std::size_t types) : waiting_(types) {}

    void on_arrival(Engine& e, std::int64_t job) { waiting_[e.type_of(job)].push_back(job); }
    void on_departure(Engine&, std::int64_t) {}
    void reschedule(Engine& e) {
        const auto needs = e.needs();
        for (;;) {
            std::size_t best = waiting_.size();
            for (std::size_t i = 0; i < waiting_.size(); ++i) {
                if (waiting_[i].empty()) continue;
                if (best == waiting_.size() || needs[i] < needs[best] ||
                    (needs[i] == needs[best] && waiting_[i].front() < waiting_[best].front())) {
                    best = i;
                }
            }
            if (best == waiting_.size() || e.busy() + needs[best] > e.servers()) break;
            const std::int64_t job = waiting_[best].front();
            waiting_[best].pop_front();
            e.start(job);
        }
    }

private:
    std::vector<std::deque<std::int64_t>> waiting_;
};

// Rebuilds the full QueueState and asks the pure policy function every time.
class ReferenceScheduler {
public:
    explicit ReferenceScheduler(PolicyKind kind) : kind_(kind) {}

    void on_arrival(Engine& e, std::int64_t job) { jobs_.push_back({job, e.type_of(job), false}); }
    void on_departure(Engine&, std::int64_t job) {
        const auto it = std::lower_bound(jobs_.begin(), jobs_.end(), job,
                                         [](const QueuedJob& q, std::int64_t id) { return q.job_id < id; });
        jobs_.erase(it);
    }
    void reschedule(Engine& e) {
        for (auto& q : jobs_) q.in_service = e.in_service(q.job_id);
        const auto state = QueueState::from_jobs(jobs_, e.num_types());
        const auto decision = schedule(kind_, state, e.needs(), e.servers(), e.l_max());

        std::vector<std::int64_t> starts;
        std::size_t p = 0;
        for (const auto& q : jobs_) {
            const bool want = p < decision.serve.size() && decision.serve[p] == q.job_id;
            if (want) ++p;
            if (q.in_service && !want) {
                if (!is_preemptive(kind_)) throw std::logic_error("non-preemptive policy evicted a job");
                e.preempt(q.job_id);
            } else if (!q.in_service && want) {
                starts.push_back(q.job_id);
            }
        }
        if (p != decision.serve.size()) throw std::logic_error("schedule names a job outside the system");
        for (auto job : starts) e.start(job);
    }

private:
    PolicyKind kind_;
    std::vector<QueuedJob> jobs_;
};

}  // namespace

SimResult simulate(const SystemSpec& system, const SystemConfig& config, const JobStream& stream,
                   const SimOptions& options) {
    Engine engine(system, config, stream, options);
    switch (system.policy) {
        case PolicyKind::FCFS: {
            FifoScheduler s(false);
            return engine.run(s);
        }
        case PolicyKind::ModifiedFCFS: {
            FifoScheduler s(true);
            return engine.run(s);
        }
        case PolicyKind::SNF: {
            SnfScheduler s(config.num_types());
            return engine.run(s);
        }
        case PolicyKind::SNF_NP: {
            SnfNonPreemptiveScheduler s(config.num_types());
            return engine.run(s);
        }
        case PolicyKind::InfiniteServer: {
            InfiniteScheduler s;
            return engine.run(s);
        }
    }
    throw std::invalid_argument("unknown policy");
}

SimResult simulate(PolicyKind policy, const SystemConfig& config, const JobStream& stream,
                   const SimOptions& options) {
    return simulate(SystemSpec{policy, config.n}, config, stream, options);
}

SimResult simulate_reference(const SystemSpec& system, const SystemConfig& config, const JobStream& stream,
                             const SimOptions& options) {
    Engine engine(system, config, stream, options);
    ReferenceScheduler s(system.policy);
    return engine.run(s);
}

std::vector<SimResult> simulate_coupled(std::span<const SystemSpec> systems, const SystemConfig& config,
                                        const JobStream& stream, const SimOptions& options) {
    std::vector<SimResult> out;
    out.reserve(systems.size());
    for (const auto& s : systems) out.push_back(simulate(s, config, stream, options));
    return out;
}

std::vector<SystemSpec> sandwich_systems(const SystemConfig& config) {
    return {{PolicyKind::ModifiedFCFS, config.n + config.l_max()},
            {PolicyKind::FCFS, config.n},
            {PolicyKind::ModifiedFCFS, config.n}};
}

bool check_sandwich(const SimResult& lower, const SimResult& original, const SimResult& upper) {
    if (lower.waits.size() != original.waits.size() || upper.waits.size() != original.waits.size())
        throw std::invalid_argument("sandwich check needs runs over the same job stream");
    for (std::size_t k = 0; k < original.waits.size(); ++k) {
        if (!(lower.waits[k] <= original.waits[k] && original.waits[k] <= upper.waits[k])) return false;
    }
    return true;
}

bool check_infinite_server_dominance(const SimResult& infinite, const SimResult& finite) {
    const auto& a = infinite.trajectory;
    const auto& b = finite.trajectory;
    if (a.empty() && b.empty()) return true;
    if (a.empty() || b.empty()) throw std::invalid_argument("dominance check needs recorded trajectories");
    const std::size_t types = a.front().x.size();
    std::vector<int> xa(types, 0), xb(types, 0);
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        double t = i < a.size() ? a[i].t : b[j].t;
        if (j < b.size()) t = std::min(t, b[j].t);
        while (i < a.size() && a[i].t == t) xa = a[i++].x;
        while (j < b.size() && b[j].t == t) xb = b[j++].x;
        for (std::size_t c = 0; c < types; ++c)
            if (xa[c] > xb[c]) return false;
    }
    return true;
}

void write_trajectory_csv(std::ostream& out, const SimResult& result, std::size_t num_types) {
    out << "t,kind,type";
    for (std::size_t i = 1; i <= num_types; ++i) out << ",x_" << i;
    for (std::size_t i = 1; i <= num_types; ++i) out << ",z_" << i;
    out << '\n';
    char buf[32];
    for (const auto& e : result.trajectory) {
        std::snprintf(buf, sizeof buf, "%.17g", e.t);
        out << buf << ',' << (e.kind == EventKind::Arrival ? "arrival" : "departure") << ',' << e.type + 1;
        for (int v : e.x) out << ',' << v;
        for (int v : e.z) out << ',' << v;
        out << '\n';
    }
}

}  // namespace msj
