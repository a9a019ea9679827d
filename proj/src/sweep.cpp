#include "msj/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "msj/sim.hpp"
#include "msj/stats.hpp"

namespace msj {

void validate(const SweepSpec& spec) {
    if (spec.source != SweepSpec::Source::File && spec.n_list.empty())
        throw std::invalid_argument("sweep needs at least one n");
    if (spec.source == SweepSpec::Source::File && !spec.file_config)
        throw std::invalid_argument("file-based sweep needs a config");
    if (spec.policies.empty()) throw std::invalid_argument("sweep needs at least one policy");
    if (spec.seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");
    if (spec.batches < 2) throw std::invalid_argument("sweep needs at least two batches");
    if (spec.jobs < 20 * static_cast<std::size_t>(spec.batches))
        throw std::invalid_argument("jobs per run must be at least 20 x batches");
    if (spec.workers < 1) throw std::invalid_argument("worker count must be positive");
}

std::string source_name(SweepSpec::Source source) {
    switch (source) {
        case SweepSpec::Source::One: return "one";
        case SweepSpec::Source::Two: return "two";
        case SweepSpec::Source::File: return "file";
    }
    return "unknown";
}

SystemConfig sweep_config(const SweepSpec& spec, int n) {
    switch (spec.source) {
        case SweepSpec::Source::One: return make_param_set(ParamSet::One, n);
        case SweepSpec::Source::Two: return make_param_set(ParamSet::Two, n);
        case SweepSpec::Source::File: return *spec.file_config;
    }
    throw std::invalid_argument("unknown parameter source");
}

namespace {

std::vector<int> effective_n_list(const SweepSpec& spec) {
    if (spec.source == SweepSpec::Source::File) return {spec.file_config->n};
    return spec.n_list;
}

struct Cell {
    int n;
    PolicyKind policy;
    std::uint64_t seed;
};

std::vector<Cell> cells_of(const SweepSpec& spec) {
    std::vector<Cell> cells;
    for (int n : effective_n_list(spec))
        for (auto p : spec.policies)
            for (auto s : spec.seeds) cells.push_back({n, p, s});
    return cells;
}

std::vector<BoundsRow> bounds_rows(const SweepSpec& spec) {
    std::vector<BoundsRow> rows;
    for (int n : effective_n_list(spec)) {
        BoundsRow row;
        row.n = n;
        try {
            const auto config = sweep_config(spec, n);
            row.report = evaluate_bounds(config, config.l_max());
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

RunRow run_cell(const SweepSpec& spec, int n, PolicyKind policy, std::uint64_t seed) {
    RunRow row;
    row.n = n;
    row.policy = policy;
    row.seed = seed;
    try {
        const auto config = sweep_config(spec, n);
        const auto stream = build_job_stream(seed, spec.jobs, config);
        SimOptions options;
        options.warmup = spec.warmup;
        options.batches = spec.batches;
        const auto result = simulate(policy, config, stream, options);

        const auto waits = mean_waiting_time(result, config, spec.batches);
        if (!waits.overall) throw std::runtime_error("too few post-warm-up jobs for batch means");
        row.mean_wait = waits.overall->mean;
        row.mean_wait_hw = waits.overall->half_width;
        for (const auto& t : waits.per_type)
            row.wait_per_type.push_back(t ? std::optional<double>(t->mean) : std::nullopt);
        const auto qp = queueing_probability(result);
        row.queueing_prob = qp.mean;
        row.queueing_prob_hw = qp.half_width;
        const auto wl = time_average_workload(result);
        row.workload = wl.mean;
        row.workload_hw = wl.half_width;
        for (std::size_t i = 0; i < config.num_types(); ++i) {
            const auto z = time_average_z(result, i);
            row.z_per_type.push_back(z.mean);
            row.z_hw_per_type.push_back(z.half_width);
        }
        row.audit_epochs = result.audit.epochs;
        row.audit_violations = result.audit.violations;
        row.events = result.event_count;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

SweepResult run_sweep(const SweepSpec& spec) {
    validate(spec);
    const auto cells = cells_of(spec);
    SweepResult out;
    out.runs.resize(cells.size());
    const auto count = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(spec.workers)
    for (std::ptrdiff_t c = 0; c < count; ++c) {
        const auto& cell = cells[static_cast<std::size_t>(c)];
        out.runs[static_cast<std::size_t>(c)] = run_cell(spec, cell.n, cell.policy, cell.seed);
    }
    out.bounds = bounds_rows(spec);
    return out;
}

SweepResult run_sweep_serial(const SweepSpec& spec) {
    validate(spec);
    SweepResult out;
    for (const auto& cell : cells_of(spec)) out.runs.push_back(run_cell(spec, cell.n, cell.policy, cell.seed));
    out.bounds = bounds_rows(spec);
    return out;
}

const std::vector<std::string>& sweep_csv_columns() {
    static const std::vector<std::string> columns = {
        "row_kind",        "param_set",       "n",           "policy",          "seed",
        "jobs",            "status",          "mean_wait",   "mean_wait_hw",    "wait_per_type",
        "queueing_prob",   "queueing_prob_hw", "workload",   "workload_hw",     "z_per_type",
        "z_hw_per_type",   "audit_epochs",    "audit_violations", "events",     "workload_lower",
        "workload_upper",  "fcfs_wait_lower", "fcfs_wait_upper", "universal_lower", "snf_upper",
        "qp_exponent",
    };
    return columns;
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string opt(const BoundValue& v) { return v.present() ? num(*v.value) : std::string(); }

std::string status_field(const std::string& error) {
    if (error.empty()) return "ok";
    std::string s = "error: " + error;
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '"') c = ' ';
    return s;
}

template <class T, class F>
std::string joined(const std::vector<T>& values, F format) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ';';
        s += format(values[i]);
    }
    return s;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += fields[i];
    }
    return line;
}

}  // namespace

void write_sweep_rows(std::ostream& out, const SweepSpec& spec, const SweepResult& result) {
    const std::string set = source_name(spec.source);
    const std::string jobs = std::to_string(spec.jobs);
    for (const auto& b : result.bounds) {
        std::vector<std::string> f(sweep_csv_columns().size());
        f[0] = "bounds";
        f[1] = set;
        f[2] = std::to_string(b.n);
        f[3] = "-";
        f[4] = "-";
        f[5] = jobs;
        f[6] = status_field(b.error);
        if (b.error.empty()) {
            f[19] = opt(b.report.workload_lower);
            f[20] = opt(b.report.workload_upper);
            f[21] = opt(b.report.fcfs_wait_lower);
            f[22] = opt(b.report.fcfs_wait_upper);
            f[23] = opt(b.report.universal_lower);
            f[24] = opt(b.report.snf_upper);
            f[25] = num(b.report.qp_exponent);
        }
        out << csv_line(f) << '\n';
    }
    for (const auto& r : result.runs) {
        std::vector<std::string> f(sweep_csv_columns().size());
        f[0] = "run";
        f[1] = set;
        f[2] = std::to_string(r.n);
        f[3] = std::string(to_string(r.policy));
        f[4] = std::to_string(r.seed);
        f[5] = jobs;
        f[6] = status_field(r.error);
        if (r.error.empty()) {
            f[7] = num(r.mean_wait);
            f[8] = num(r.mean_wait_hw);
            f[9] = joined(r.wait_per_type, [](const std::optional<double>& v) { return v ? num(*v) : "NA"; });
            f[10] = num(r.queueing_prob);
            f[11] = num(r.queueing_prob_hw);
            f[12] = num(r.workload);
            f[13] = num(r.workload_hw);
            f[14] = joined(r.z_per_type, num);
            f[15] = joined(r.z_hw_per_type, num);
            f[16] = std::to_string(r.audit_epochs);
            f[17] = std::to_string(r.audit_violations);
            f[18] = std::to_string(r.events);
        }
        out << csv_line(f) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const SweepResult& result) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# generated: " << stamp << '\n';
    out << "# ci: batch means, " << spec.batches << " equal batches (job count for waits, time for averages), "
        << "two-sided 95% Student-t with batches-1 dof\n";
    out << "# warmup: " << spec.warmup << " of simulated time; queueing_prob is a time average (PASTA)\n";
    out << "# snf-np: smallest need first, earliest arrival breaks ties\n";
    const auto& cols = sweep_csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    write_sweep_rows(out, spec, result);
}

}  // namespace msj
