#include "msj/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msj {

std::pair<double, std::size_t> universal_lower_bound(const SystemConfig& config, const DerivedParams& p,
                                                     std::size_t from) {
    if (from < 1 || from > config.num_types()) throw std::out_of_range("index range outside [1, I]");
    double best = -1.0;
    std::size_t arg = from;
    for (std::size_t i = from - 1; i < config.num_types(); ++i) {
        const double v = p.mu_min * p.sub_sigma2[i] / (p.lambda_total * config.types[i].server_need * p.sub_delta[i]);
        if (v > best) {
            best = v;
            arg = i + 1;
        }
    }
    return {best, arg};
}

BoundReport evaluate_bounds(const SystemConfig& config, double delta_prime, const AssumptionThresholds& thresholds) {
    const auto p = derive_params(config);
    const double n = config.n;
    const double log_n = std::log(n);
    const double l_max = p.l_max;

    BoundReport r;
    r.delta_prime = delta_prime;
    r.assumptions = check_assumptions(config, thresholds);
    r.indices = critical_indices(config, p);

    r.workload_lower = BoundValue::of(p.sigma2 / p.delta);
    r.workload_upper = delta_prime < p.delta ? BoundValue::of(p.sigma2 / (p.delta - delta_prime))
                                             : BoundValue::absent("delta' >= delta");
    r.fcfs_wait_lower = BoundValue::of(p.sigma2 / (n * (p.delta + l_max)));
    r.fcfs_wait_upper = l_max < p.delta ? BoundValue::of(p.sigma2 / (n * (p.delta - l_max)))
                                        : BoundValue::absent("l_max >= delta");

    const std::size_t types = config.num_types();
    const std::size_t i_star = r.indices.i_star;
    const std::size_t i_star_1 = r.indices.i_star_1;

    const auto [lower, arg] = universal_lower_bound(config, p, i_star);
    r.universal_lower = BoundValue::of(lower);
    r.universal_argmax = arg;

    // Leading term of one heavy subsystem, before the 1/lambda factor.
    auto heavy_term = [&](std::size_t i) -> std::optional<double> {
        const double need = config.types[i].server_need;
        const double gap = p.sub_delta[i] - need;
        if (!(gap > 0.0)) return std::nullopt;
        return p.mu_max * p.sub_sigma2[i] / (need * gap);
    };

    double heavy_sum = 0.0;
    bool heavy_ok = true;
    for (std::size_t i = i_star - 1; i < types; ++i) {
        const auto term = heavy_term(i);
        if (!term) {
            heavy_ok = false;
            break;
        }
        heavy_sum += *term;
    }
    r.snf_upper = heavy_ok ? BoundValue::of(heavy_sum / p.lambda_total)
                           : BoundValue::absent("delta_i <= l_i for some i >= i*");

    double intermediate_sum = 0.0;
    for (std::size_t i = 0; i < types; ++i) {
        const double need = config.types[i].server_need;
        const double rate = config.types[i].arrival_rate;
        SnfTypeBound b;
        if (i + 1 >= i_star) {
            b.regime = SnfTypeBound::Regime::Heavy;
            const auto term = heavy_term(i);
            b.wait = term ? BoundValue::of(*term / rate) : BoundValue::absent("delta_i <= l_i");
        } else if (i + 1 >= i_star_1) {
            b.regime = SnfTypeBound::Regime::Intermediate;
            const double order = std::sqrt(p.sub_sigma2[i]) * log_n / need;
            b.wait = BoundValue::of(order / rate);
            intermediate_sum += order;
        } else {
            b.regime = SnfTypeBound::Regime::Light;
            b.exponent = p.sub_delta[i] * p.sub_delta[i] / (n * need);
            b.wait = BoundValue::absent("exponentially small; only the exponent is defined");
        }
        r.snf_general.push_back(b);
    }
    r.snf_general_mean = heavy_ok ? BoundValue::of((heavy_sum + intermediate_sum) / p.lambda_total)
                                  : BoundValue::absent("delta_i <= l_i for some i >= i*");

    r.qp_exponent = p.delta * p.delta / (n * l_max);
    return r;
}

namespace {

double tail_scale(const SystemConfig& config, const std::vector<double>& c) {
    if (c.size() != config.num_types()) throw std::invalid_argument("need one weight per type");
    double c_max = 0.0;
    for (double v : c) {
        if (!(v >= 0.0)) throw std::invalid_argument("tail weights must be nonnegative");
        c_max = std::max(c_max, v);
    }
    const auto p = derive_params(config);
    return c_max * c_max * p.mu_max * p.sigma2;
}

}  // namespace

double mminf_tail(const SystemConfig& config, const std::vector<double>& c, double k) {
    if (!(k >= 0.0)) throw std::invalid_argument("K must be nonnegative");
    const double s = tail_scale(config, c);
    if (s == 0.0) return k > 0.0 ? 0.0 : 1.0;
    return std::exp(-k * k / (2.0 * s));
}

double mminf_tail_linear(const SystemConfig& config, const std::vector<double>& c, double alpha, double beta,
                         double j) {
    if (!(alpha >= 0.0 && beta >= 0.0 && j >= 0.0)) throw std::invalid_argument("alpha, beta, j must be >= 0");
    if (alpha * beta < tail_scale(config, c))
        throw std::invalid_argument("alpha * beta is below c_max^2 mu_max sigma2");
    return std::exp(-j);
}

double mminf_negative_part(const SystemConfig& config, const std::vector<double>& c) {
    return std::sqrt(tail_scale(config, c));
}

RegimeOrders regime_orders(double n, double alpha, double gamma) {
    if (!(n > 1.0)) throw std::invalid_argument("n must exceed 1");
    if (!(gamma >= 0.0 && gamma <= alpha && alpha <= (1.0 + gamma) / 2.0 && gamma < 1.0))
        throw std::invalid_argument("regime requires 0 <= gamma <= alpha <= (1+gamma)/2 < 1");
    RegimeOrders o;
    o.fcfs_exponent = gamma - alpha;
    o.lower_exponent = -alpha;
    o.snf_exponent = -alpha;
    o.fcfs = std::pow(n, o.fcfs_exponent);
    o.lower = std::pow(n, o.lower_exponent);
    o.snf = std::pow(n, o.snf_exponent);
    o.interior = gamma < alpha && alpha < (1.0 + gamma) / 2.0;
    return o;
}

}  // namespace msj
