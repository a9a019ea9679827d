#pragma once

#include <cstddef>
#include <vector>

namespace msj {

/// One job class. Jobs arrive as a Poisson stream and each holds a fixed number
/// of servers for an exponential service period.
struct JobTypeSpec {
    double arrival_rate = 0.0;  // lambda_i
    double service_rate = 0.0;  // mu_i
    int server_need = 1;        // l_i

    bool operator==(const JobTypeSpec&) const = default;
};

/// n servers plus the job classes, sorted by nondecreasing server need.
struct SystemConfig {
    int n = 0;
    std::vector<JobTypeSpec> types;

    std::size_t num_types() const { return types.size(); }
    int l_max() const { return types.empty() ? 0 : types.back().server_need; }
    std::vector<int> needs() const;
    std::vector<double> service_rates() const;

    bool operator==(const SystemConfig&) const = default;
};

/// Throws std::invalid_argument if rates are nonpositive, needs are unsorted,
/// the largest need exceeds n, or the slack capacity is not positive.
void validate(const SystemConfig& config);

/// Stable-sorts the types by server need. Used when loading user configs.
SystemConfig sorted_by_need(SystemConfig config);

struct DerivedParams {
    double delta = 0.0;   // slack capacity, n - sum lambda_i l_i / mu_i
    double sigma2 = 0.0;  // work variability, sum lambda_i l_i^2 / mu_i^2
    std::vector<double> rho;
    int l_max = 0;
    double lambda_total = 0.0;
    std::vector<double> sub_delta;   // delta_i over the first i types
    std::vector<double> sub_sigma2;  // sigma2_i over the first i types
    double mu_min = 0.0;
    double mu_max = 0.0;
};

DerivedParams derive_params(const SystemConfig& config);

enum class ParamSet { One, Two };

/// The two three-type families used in the simulation study. Requires n >= 64.
SystemConfig make_param_set(ParamSet which, int n);

/// Shape of a config produced for a parameterized (alpha, gamma) regime.
/// need_exponents scale gamma per type (last must be 1); load_split are the
/// relative loads (normalized internally).
struct RegimeTemplate {
    std::vector<double> service_rates;
    std::vector<double> load_split;
    std::vector<double> need_exponents;
};

/// Config with l_max = round(n^gamma) and delta = n^alpha. Accepts the closed
/// region 0 <= gamma <= alpha <= (1+gamma)/2, alpha < 1.
SystemConfig make_regime_config(int n, double alpha, double gamma, const RegimeTemplate& shape);

struct AssumptionThresholds {
    double epsilon0 = 0.9;
    double heavy_traffic = 1.0;  // a1_ratio <= this
    double commonness = 1.0;     // a3_ratio >= this
};

struct AssumptionReport {
    double a1_ratio = 0.0;
    double a2_ratio = 0.0;
    double a3_ratio = 0.0;
    double epsilon0 = 0.0;
    bool holds[3] = {false, false, false};

    bool operator==(const AssumptionReport&) const = default;
};

AssumptionReport check_assumptions(const SystemConfig& config,
                                   const AssumptionThresholds& thresholds = {});

/// 1-based critical indices with flags telling whether the proxy was met or
/// the index fell back to I.
struct CriticalIndices {
    std::size_t i_star = 0;
    std::size_t i_star_1 = 0;
    bool i_star_fallback = false;
    bool i_star_1_fallback = false;

    bool operator==(const CriticalIndices&) const = default;
};

CriticalIndices critical_indices(const SystemConfig& config);
CriticalIndices critical_indices(const SystemConfig& config, const DerivedParams& params);

}  // namespace msj
