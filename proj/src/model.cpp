#include "msj/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace msj {

std::vector<int> SystemConfig::needs() const {
    std::vector<int> out;
    out.reserve(types.size());
    for (const auto& t : types) out.push_back(t.server_need);
    return out;
}

std::vector<double> SystemConfig::service_rates() const {
    std::vector<double> out;
    out.reserve(types.size());
    for (const auto& t : types) out.push_back(t.service_rate);
    return out;
}

namespace {

double offered_servers(const SystemConfig& config) {
    double busy = 0.0;
    for (const auto& t : config.types) busy += t.arrival_rate * t.server_need / t.service_rate;
    return busy;
}

}  // namespace

void validate(const SystemConfig& config) {
    if (config.n < 1) throw std::invalid_argument("server count must be positive");
    if (config.types.empty()) throw std::invalid_argument("config has no job types");
    int prev_need = 0;
    for (std::size_t i = 0; i < config.types.size(); ++i) {
        const auto& t = config.types[i];
        const std::string where = "type " + std::to_string(i + 1) + ": ";
        if (!(t.arrival_rate > 0.0) || !std::isfinite(t.arrival_rate))
            throw std::invalid_argument(where + "arrival rate must be positive");
        if (!(t.service_rate > 0.0) || !std::isfinite(t.service_rate))
            throw std::invalid_argument(where + "service rate must be positive");
        if (t.server_need < 1) throw std::invalid_argument(where + "server need must be >= 1");
        if (t.server_need < prev_need)
            throw std::invalid_argument(where + "types must be sorted by nondecreasing server need");
        prev_need = t.server_need;
    }
    if (config.l_max() > config.n)
        throw std::invalid_argument("largest server need exceeds the number of servers");
    if (!(config.n - offered_servers(config) > 0.0))
        throw std::invalid_argument("slack capacity is not positive (overloaded system)");
}

SystemConfig sorted_by_need(SystemConfig config) {
    std::stable_sort(config.types.begin(), config.types.end(),
                     [](const JobTypeSpec& a, const JobTypeSpec& b) {
                         return a.server_need < b.server_need;
                     });
    return config;
}

DerivedParams derive_params(const SystemConfig& config) {
    validate(config);
    DerivedParams p;
    const auto n = static_cast<double>(config.n);
    p.l_max = config.l_max();
    p.mu_min = config.types.front().service_rate;
    p.mu_max = p.mu_min;

    double busy = 0.0;
    double var = 0.0;
    for (const auto& t : config.types) {
        const double work = static_cast<double>(t.server_need) / t.service_rate;
        busy += t.arrival_rate * work;
        var += t.arrival_rate * work * work;
        p.sub_delta.push_back(n - busy);
        p.sub_sigma2.push_back(var);
        p.rho.push_back(t.arrival_rate * work / n);
        p.lambda_total += t.arrival_rate;
        p.mu_min = std::min(p.mu_min, t.service_rate);
        p.mu_max = std::max(p.mu_max, t.service_rate);
    }
    p.delta = p.sub_delta.back();
    p.sigma2 = p.sub_sigma2.back();
    return p;
}

SystemConfig make_param_set(ParamSet which, int n) {
    if (n < 64) throw std::invalid_argument("parameter sets require n >= 64");
    const auto un = static_cast<unsigned>(n);
    const int log2n = static_cast<int>(std::bit_width(un)) - 1;
    int sqrtn = static_cast<int>(std::sqrt(static_cast<double>(n)));
    while ((sqrtn + 1) * (sqrtn + 1) <= n) ++sqrtn;
    while (sqrtn * sqrtn > n) --sqrtn;

    const double nd = n;
    const double delta = 2.0 * sqrtn;
    const double mu[3] = {0.25, 0.5, 1.0};
    const int need[3] = {1, log2n, sqrtn};

    // Target busy servers per type, rho_i * n.
    double busy[3];
    if (which == ParamSet::One) {
        busy[0] = busy[1] = busy[2] = (nd - delta) / 3.0;
    } else {
        const double heavy = std::pow(nd, 0.7);
        busy[0] = busy[1] = (nd - delta - heavy) / 2.0;
        busy[2] = heavy;
    }

    SystemConfig config;
    config.n = n;
    for (int i = 0; i < 3; ++i) {
        const double rate = busy[i] * mu[i] / need[i];
        if (!(rate > 0.0)) throw std::invalid_argument("parameter set gives a nonpositive arrival rate");
        config.types.push_back({rate, mu[i], need[i]});
    }
    validate(config);
    return config;
}

SystemConfig make_regime_config(int n, double alpha, double gamma, const RegimeTemplate& shape) {
    if (!(alpha >= 0.0 && alpha < 1.0 && gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("(alpha, gamma) must lie in [0,1)^2");
    if (gamma > alpha) throw std::invalid_argument("regime requires gamma <= alpha");
    if (alpha > (1.0 + gamma) / 2.0) throw std::invalid_argument("regime requires alpha <= (1+gamma)/2");
    const std::size_t types = shape.service_rates.size();
    if (types == 0 || shape.load_split.size() != types || shape.need_exponents.size() != types)
        throw std::invalid_argument("regime template vectors must be nonempty and equally sized");
    if (shape.need_exponents.back() != 1.0)
        throw std::invalid_argument("the last type must carry the maximal need (exponent 1)");

    const double split_total = std::accumulate(shape.load_split.begin(), shape.load_split.end(), 0.0);
    if (!(split_total > 0.0)) throw std::invalid_argument("load split must have positive total");

    const double nd = n;
    const double delta = std::pow(nd, alpha);
    SystemConfig config;
    config.n = n;
    for (std::size_t i = 0; i < types; ++i) {
        const int need = std::max(1, static_cast<int>(std::lround(std::pow(nd, gamma * shape.need_exponents[i]))));
        const double rate = shape.load_split[i] / split_total * (nd - delta) * shape.service_rates[i] / need;
        if (!(rate > 0.0)) throw std::invalid_argument("regime back-solve gave a nonpositive arrival rate");
        config.types.push_back({rate, shape.service_rates[i], need});
    }
    validate(config);
    return config;
}

AssumptionReport check_assumptions(const SystemConfig& config, const AssumptionThresholds& thresholds) {
    const auto p = derive_params(config);
    const double n = config.n;
    const double log_n = std::log(n);

    AssumptionReport r;
    r.epsilon0 = thresholds.epsilon0;
    r.a1_ratio = p.delta * log_n / std::sqrt(p.sigma2);
    r.a2_ratio = p.l_max / p.delta;
    r.a3_ratio = p.rho.back() / (std::sqrt(r.a1_ratio * p.l_max / n) * log_n);
    r.holds[0] = r.a1_ratio <= thresholds.heavy_traffic;
    r.holds[1] = p.l_max <= thresholds.epsilon0 * p.delta;
    r.holds[2] = r.a3_ratio >= thresholds.commonness;
    return r;
}

CriticalIndices critical_indices(const SystemConfig& config) {
    return critical_indices(config, derive_params(config));
}

CriticalIndices critical_indices(const SystemConfig& config, const DerivedParams& p) {
    const std::size_t types = config.num_types();
    const double n = config.n;
    const double log_n = std::log(n);

    CriticalIndices out{types, types, true, true};
    for (std::size_t i = 0; i < types; ++i) {
        if (p.sub_delta[i] <= std::sqrt(p.sub_sigma2[i]) / log_n) {
            out.i_star = i + 1;
            out.i_star_fallback = false;
            break;
        }
    }
    for (std::size_t i = 0; i < types; ++i) {
        if (p.sub_delta[i] <= std::sqrt(n * config.types[i].server_need) * log_n) {
            out.i_star_1 = i + 1;
            out.i_star_1_fallback = false;
            break;
        }
    }
    return out;
}

}  // namespace msj
