// msjlab: command-line harness for the multiserver-job laboratory.
//
// Every flag can also be set through an environment variable named
// MSJ_<FLAG>, upper-cased with dashes turned into underscores
// (MSJ_PARAM_SET, MSJ_N, MSJ_JOBS, ...). Command-line values win.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "msj/bounds.hpp"
#include "msj/io.hpp"
#include "msj/model.hpp"
#include "msj/policies.hpp"
#include "msj/sim.hpp"
#include "msj/stats.hpp"
#include "msj/sweep.hpp"
#include "msj/verify.hpp"

namespace {

constexpr int kLargestDefaultN = 4096;

std::string env_name(const std::string& flag) {
    std::string s = "MSJ_";
    for (char c : flag) s += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

template <class T>
CLI::Option* flag(CLI::App* app, const std::string& name, T& target, const std::string& help) {
    return app->add_option("--" + name, target, help)->envname(env_name(name));
}

struct Source {
    std::string param_set = "one";
    std::string config_file;
    bool allow_large = false;

    void attach(CLI::App* app) {
        flag(app, "param-set", param_set, "parameter family: one or two")
            ->check(CLI::IsMember({"one", "two"}));
        flag(app, "config", config_file, "JSON config {n, types:[{lambda, mu, l}]}; overrides --param-set");
        app->add_flag("--allow-large", allow_large, "permit n above 4096")->envname(env_name("allow-large"));
    }

    bool from_file() const { return !config_file.empty(); }

    msj::SystemConfig config(int n) const {
        if (from_file()) return msj::load_config(config_file);
        check_n(n);
        return msj::make_param_set(param_set == "two" ? msj::ParamSet::Two : msj::ParamSet::One, n);
    }

    void check_n(int n) const {
        if (n > kLargestDefaultN && !allow_large)
            throw std::invalid_argument("n = " + std::to_string(n) + " exceeds 4096; pass --allow-large");
    }
};

struct RunArgs {
    Source source;
    int n = 64;
    std::string policy = "fcfs";
    std::uint64_t seed = 1;
    std::size_t jobs = 2'000'000;
    double warmup = 0.1;
    int batches = 20;
    std::string out;
    std::string trajectory;
};

void add_run_flags(CLI::App* app, RunArgs& a) {
    a.source.attach(app);
    flag(app, "n", a.n, "number of servers");
    flag(app, "seed", a.seed, "master seed");
    flag(app, "jobs", a.jobs, "jobs per run (K)");
    flag(app, "warmup", a.warmup, "fraction of simulated time discarded")->check(CLI::Range(0.0, 0.99));
    flag(app, "batches", a.batches, "batch count for batch means")->check(CLI::Range(2, 100000));
    flag(app, "out", a.out, "output file (stdout if omitted)");
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write " + path);
    return file;
}

nlohmann::json estimate_json(const msj::BatchMeansEstimate& e) {
    return {{"mean", e.mean}, {"half_width", e.half_width}, {"batches", e.batches}};
}

int do_run(const RunArgs& a) {
    const auto config = a.source.config(a.n);
    const auto policy = msj::parse_policy(a.policy);
    if (!policy) throw std::invalid_argument("unknown policy " + a.policy);
    const auto stream = msj::build_job_stream(a.seed, a.jobs, config);
    msj::SimOptions options;
    options.warmup = a.warmup;
    options.batches = a.batches;
    options.record_trajectory = !a.trajectory.empty();
    const auto r = msj::simulate(*policy, config, stream, options);

    const auto waits = msj::mean_waiting_time(r, config, a.batches);
    nlohmann::json per_type = nlohmann::json::array();
    for (std::size_t i = 0; i < config.num_types(); ++i) {
        per_type.push_back({{"type", i + 1},
                            {"mean_wait", waits.per_type[i] ? estimate_json(*waits.per_type[i]) : nullptr},
                            {"x", estimate_json(msj::time_average_x(r, i))},
                            {"z", estimate_json(msj::time_average_z(r, i))},
                            {"q", estimate_json(msj::time_average_q(r, i))}});
    }
    const nlohmann::json doc = {
        {"config", msj::config_to_json(config)},
        {"policy", msj::to_string(*policy)},
        {"seed", a.seed},
        {"jobs", a.jobs},
        {"warmup", a.warmup},
        {"mean_wait", waits.overall ? estimate_json(*waits.overall) : nullptr},
        {"mean_wait_direct", waits.overall_direct},
        {"queueing_prob", estimate_json(msj::queueing_probability(r))},
        {"workload", estimate_json(msj::time_average_workload(r))},
        {"per_type", per_type},
        {"events", r.event_count},
        {"preemptions", r.preemptions},
        {"audit", {{"epochs", r.audit.epochs}, {"violations", r.audit.violations}}},
    };
    std::ofstream file;
    open_out(a.out, file) << doc.dump(2) << '\n';
    if (!a.trajectory.empty()) {
        std::ofstream t(a.trajectory);
        if (!t) throw std::runtime_error("cannot write " + a.trajectory);
        msj::write_trajectory_csv(t, r, config.num_types());
    }
    return 0;
}

struct SweepArgs {
    Source source;
    std::vector<int> n_list{64, 256, 1024, 4096};
    std::vector<std::string> policies{"fcfs", "snf", "snf-np"};
    std::vector<std::uint64_t> seeds{1};
    std::size_t jobs = 2'000'000;
    double warmup = 0.1;
    int batches = 20;
    int workers = 1;
    std::string out;
};

int do_sweep(const SweepArgs& a) {
    msj::SweepSpec spec;
    if (a.source.from_file()) {
        spec.source = msj::SweepSpec::Source::File;
        spec.file_config = msj::load_config(a.source.config_file);
    } else {
        spec.source = a.source.param_set == "two" ? msj::SweepSpec::Source::Two : msj::SweepSpec::Source::One;
        for (int n : a.n_list) a.source.check_n(n);
        spec.n_list = a.n_list;
    }
    for (const auto& p : a.policies) {
        const auto kind = msj::parse_policy(p);
        if (!kind) throw std::invalid_argument("unknown policy " + p);
        spec.policies.push_back(*kind);
    }
    spec.seeds = a.seeds;
    spec.jobs = a.jobs;
    spec.warmup = a.warmup;
    spec.batches = a.batches;
    spec.workers = a.workers;
    const auto result = msj::run_sweep(spec);
    std::ofstream file;
    msj::write_sweep_csv(open_out(a.out, file), spec, result);
    return 0;
}

struct BoundsArgs {
    Source source;
    int n = 64;
    double delta_prime = -1.0;
    std::string out;
};

int do_bounds(const BoundsArgs& a) {
    const auto config = a.source.config(a.n);
    const double dp = a.delta_prime < 0 ? config.l_max() : a.delta_prime;
    auto doc = msj::bounds_to_json(msj::evaluate_bounds(config, dp));
    std::ofstream file;
    open_out(a.out, file) << doc.dump(2) << '\n';
    return 0;
}

int do_verify(const std::vector<std::string>& suites) {
    bool ok = true;
    for (const auto& name : suites) {
        const auto suite = msj::parse_suite(name);
        if (!suite) throw std::invalid_argument("unknown verify suite " + name);
        const auto report = msj::run_verify(*suite);
        std::printf("== %s ==\n", name.c_str());
        for (const auto& c : report.checks)
            std::printf("%-4s  %-36s  %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        std::printf("%s: %s\n\n", name.c_str(), report.passed() ? "passed" : "FAILED");
        ok = ok && report.passed();
    }
    return ok ? 0 : 1;
}

int do_couple(const RunArgs& a) {
    const auto config = a.source.config(a.n);
    const auto stream = msj::build_job_stream(a.seed, a.jobs, config);
    msj::SimOptions options;
    options.warmup = a.warmup;
    options.batches = a.batches;
    options.record_trajectory = true;
    const auto systems = msj::sandwich_systems(config);
    const auto runs = msj::simulate_coupled(systems, config, stream, options);
    const bool sandwich = msj::check_sandwich(runs[0], runs[1], runs[2]);
    const auto inf = msj::simulate(msj::SystemSpec{msj::PolicyKind::InfiniteServer, config.n}, config, stream, options);
    const bool dominance = msj::check_infinite_server_dominance(inf, runs[1]);

    nlohmann::json systems_doc = nlohmann::json::array();
    for (const auto& r : runs) {
        const auto w = msj::mean_waiting_time(r, config, a.batches);
        systems_doc.push_back({{"policy", msj::to_string(r.system.policy)},
                               {"servers", r.system.servers},
                               {"mean_wait_direct", w.overall_direct}});
    }
    const nlohmann::json doc = {{"seed", a.seed},
                                {"jobs", a.jobs},
                                {"systems", systems_doc},
                                {"sandwich_holds", sandwich},
                                {"infinite_server_dominance_holds", dominance}};
    std::ofstream file;
    open_out(a.out, file) << doc.dump(2) << '\n';
    if (!a.trajectory.empty()) {
        std::ofstream t(a.trajectory);
        if (!t) throw std::runtime_error("cannot write " + a.trajectory);
        msj::write_trajectory_csv(t, runs[1], config.num_types());
    }
    return sandwich && dominance ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"msjlab: multiserver-job queueing laboratory"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "simulate one policy and print estimates as JSON");
    add_run_flags(run_cmd, run);
    flag(run_cmd, "policy", run.policy, "fcfs | snf | snf-np | mod-fcfs | inf");
    flag(run_cmd, "dump-trajectory", run.trajectory, "write the full state trajectory as CSV");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "grid of (n, policy, seed) runs written as CSV");
    sweep.source.attach(sweep_cmd);
    flag(sweep_cmd, "n", sweep.n_list, "server counts")->delimiter(',');
    flag(sweep_cmd, "policy", sweep.policies, "policies")->delimiter(',');
    flag(sweep_cmd, "seed", sweep.seeds, "seeds")->delimiter(',');
    flag(sweep_cmd, "jobs", sweep.jobs, "jobs per run (K)");
    flag(sweep_cmd, "warmup", sweep.warmup, "fraction of simulated time discarded")->check(CLI::Range(0.0, 0.99));
    flag(sweep_cmd, "batches", sweep.batches, "batch count")->check(CLI::Range(2, 100000));
    flag(sweep_cmd, "workers", sweep.workers, "worker threads")->check(CLI::PositiveNumber);
    flag(sweep_cmd, "out", sweep.out, "CSV output file (stdout if omitted)");

    BoundsArgs bounds;
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate closed-form bounds as JSON");
    bounds.source.attach(bounds_cmd);
    flag(bounds_cmd, "n", bounds.n, "number of servers");
    flag(bounds_cmd, "delta-prime", bounds.delta_prime, "work-conservation slack (default l_max)");
    flag(bounds_cmd, "out", bounds.out, "output file (stdout if omitted)");

    std::vector<std::string> suites{"coupling", "oracle", "tails", "drift"};
    auto* verify_cmd = app.add_subcommand("verify", "run invariant suites; nonzero exit on failure");
    verify_cmd->add_option("suite", suites, "coupling | oracle | tails | drift (default: all)")
        ->envname(env_name("suite"));

    RunArgs couple;
    couple.jobs = 100'000;
    auto* couple_cmd = app.add_subcommand("couple", "sandwich and infinite-server coupling checks");
    add_run_flags(couple_cmd, couple);
    flag(couple_cmd, "dump-trajectory", couple.trajectory, "write the FCFS@n trajectory as CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return do_run(run);
        if (*sweep_cmd) return do_sweep(sweep);
        if (*bounds_cmd) return do_bounds(bounds);
        if (*verify_cmd) return do_verify(suites);
        if (*couple_cmd) return do_couple(couple);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "msjlab: %s\n", e.what());
        return 2;
    }
    return 0;
}
