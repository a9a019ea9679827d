#include "msj/verify.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "msj/bounds.hpp"
#include "msj/oracle.hpp"
#include "msj/sim.hpp"
#include "msj/stats.hpp"

namespace msj {

namespace {

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

void add(VerifyReport& report, std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, std::move(detail)});
}

VerifyReport verify_coupling() {
    VerifyReport report{VerifySuite::Coupling, {}};
    for (int n : {64, 256}) {
        const auto config = make_param_set(ParamSet::One, n);
        const auto systems = sandwich_systems(config);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto stream = build_job_stream(seed, 20'000, config);
            const auto runs = simulate_coupled(systems, config, stream);
            add(report, "sandwich n=" + std::to_string(n) + " seed=" + std::to_string(seed),
                check_sandwich(runs[0], runs[1], runs[2]), "W_L(k) <= W(k) <= W_U(k) for every job");

            SimOptions traced;
            traced.record_trajectory = true;
            const auto inf = simulate(SystemSpec{PolicyKind::InfiniteServer, n}, config, stream, traced);
            const auto fcfs = simulate(SystemSpec{PolicyKind::FCFS, n}, config, stream, traced);
            add(report, "inf-dominance n=" + std::to_string(n) + " seed=" + std::to_string(seed),
                check_infinite_server_dominance(inf, fcfs), "X_inf_i(t) <= X_i(t) at every epoch");
        }
    }
    return report;
}

VerifyReport verify_oracle() {
    VerifyReport report{VerifySuite::Oracle, {}};

    const SystemConfig mm2{2, {{1.0, 1.0, 1}}};
    const double erlang = erlang_c(2, 1.0, 1.0).mean_wait;
    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto r = simulate(PolicyKind::FCFS, mm2, build_job_stream(seed, 200'000, mm2));
        if (mean_waiting_time(r, mm2).overall->contains(erlang)) ++covered;
    }
    add(report, "erlang-c M/M/2", covered >= 4, fmt("CI covers %.6f in %.0f/5 seeds", erlang, covered));

    const SystemConfig whole{4, {{0.5, 1.0, 4}}};
    for (auto policy : {PolicyKind::FCFS, PolicyKind::SNF, PolicyKind::SNF_NP}) {
        const auto r = simulate(policy, whole, build_job_stream(7, 200'000, whole));
        const auto w = *mean_waiting_time(r, whole).overall;
        add(report, "whole-machine M/M/1 " + std::string(to_string(policy)), w.contains(1.0),
            fmt("mean wait %.4f +- %.4f vs 1.0", w.mean, w.half_width));
    }

    const auto config = two_type_snf_config();
    const auto sol = ctmc_stationary_auto(config, snf_count_allocation(config));
    add(report, "ctmc certified", sol.certified,
        fmt("residual %.2e, tail mass %.2e", sol.residual, sol.tail_mass_bound));
    for (std::size_t i = 0; i < config.num_types(); ++i) {
        int hits = 0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto r = simulate(PolicyKind::SNF, config, build_job_stream(seed, 200'000, config));
            if (time_average_q(r, i).contains(sol.mean_q[i])) ++hits;
        }
        add(report, "ctmc vs snf E[Q_" + std::to_string(i + 1) + "]", hits >= 4,
            fmt("CI covers %.6f in %.0f/5 seeds", sol.mean_q[i], hits));
    }
    return report;
}

VerifyReport verify_tails() {
    VerifyReport report{VerifySuite::Tails, {}};
    const auto config = make_param_set(ParamSet::One, 64);
    const auto c = workload_weights(config);
    const double scale = mminf_negative_part(config, c);
    SimOptions options;
    for (double m : {0.5, 1.0, 1.5, 2.0}) options.tail_probe.thresholds.push_back(m * scale);
    options.tail_probe.weights = c;
    const auto r = simulate(SystemSpec{PolicyKind::InfiniteServer, config.n}, config,
                            build_job_stream(11, 200'000, config), options);
    std::int64_t samples = 0;
    for (auto a : r.window_arrivals) samples += a;
    for (std::size_t k = 0; k < options.tail_probe.thresholds.size(); ++k) {
        const double bound = mminf_tail(config, c, options.tail_probe.thresholds[k]);
        const double allowance = 3.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(samples));
        add(report, "left tail K=" + fmt("%.3g", options.tail_probe.thresholds[k]),
            r.tail_fraction[k] <= bound + allowance,
            fmt("empirical %.5f vs bound %.5f + %.5f", r.tail_fraction[k], bound, allowance));
    }
    return report;
}

VerifyReport verify_drift() {
    VerifyReport report{VerifySuite::Drift, {}};
    const auto config = make_param_set(ParamSet::One, 64);
    const auto stream = build_job_stream(3, 200'000, config);
    for (auto policy : {PolicyKind::FCFS, PolicyKind::SNF, PolicyKind::SNF_NP, PolicyKind::ModifiedFCFS,
                        PolicyKind::InfiniteServer}) {
        const auto r = simulate(policy, config, stream);
        for (std::size_t i = 0; i < config.num_types(); ++i) {
            const double target = config.types[i].arrival_rate / config.types[i].service_rate;
            const auto z = time_average_z(r, i);
            add(report, std::string(to_string(policy)) + " E[Z_" + std::to_string(i + 1) + "]", z.contains(target),
                fmt("%.4f +- %.4f vs %.4f", z.mean, z.half_width, target));
        }
    }
    return report;
}

}  // namespace

std::optional<VerifySuite> parse_suite(std::string_view name) {
    for (auto s : {VerifySuite::Coupling, VerifySuite::Oracle, VerifySuite::Tails, VerifySuite::Drift})
        if (to_string(s) == name) return s;
    return std::nullopt;
}

std::string_view to_string(VerifySuite suite) {
    switch (suite) {
        case VerifySuite::Coupling: return "coupling";
        case VerifySuite::Oracle: return "oracle";
        case VerifySuite::Tails: return "tails";
        case VerifySuite::Drift: return "drift";
    }
    return "unknown";
}

bool VerifyReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

VerifyReport run_verify(VerifySuite suite) {
    switch (suite) {
        case VerifySuite::Coupling: return verify_coupling();
        case VerifySuite::Oracle: return verify_oracle();
        case VerifySuite::Tails: return verify_tails();
        case VerifySuite::Drift: return verify_drift();
    }
    throw std::invalid_argument("unknown verify suite");
}

SystemConfig two_type_snf_config() { return SystemConfig{6, {{1.0, 1.0, 1}, {0.5, 1.0, 3}}}; }

std::vector<double> workload_weights(const SystemConfig& config) {
    std::vector<double> c;
    for (const auto& t : config.types) c.push_back(1.0 / t.service_rate);
    return c;
}

}  // namespace msj
