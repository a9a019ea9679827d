#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msj/model.hpp"

namespace msj {

/// A bound value, or the reason it is not defined at this config.
struct BoundValue {
    std::optional<double> value;
    std::string absent_reason;

    static BoundValue of(double v) { return {v, {}}; }
    static BoundValue absent(std::string why) { return {std::nullopt, std::move(why)}; }
    bool present() const { return value.has_value(); }
    bool operator==(const BoundValue&) const = default;
};

/// Per-type SNF bound without the commonness assumption. Types at or above
/// i* carry a leading-term value; types in [i*_1, i*) carry an order term
/// with unit constant; types below i*_1 only report the decay exponent.
struct SnfTypeBound {
    enum class Regime { Heavy, Intermediate, Light } regime = Regime::Heavy;
    BoundValue wait;
    double exponent = 0.0;  // delta_i^2 / (n l_i), Light regime only
    bool operator==(const SnfTypeBound&) const = default;
};

struct BoundReport {
    double delta_prime = 0.0;
    BoundValue workload_lower;   // sigma2 / delta
    BoundValue workload_upper;   // sigma2 / (delta - delta')
    BoundValue fcfs_wait_lower;  // sigma2 / (n (delta + l_max))
    BoundValue fcfs_wait_upper;  // sigma2 / (n (delta - l_max))
    BoundValue universal_lower;
    std::size_t universal_argmax = 0;  // 1-based
    BoundValue snf_upper;
    std::vector<SnfTypeBound> snf_general;
    BoundValue snf_general_mean;
    double qp_exponent = 0.0;  // delta^2 / (n l_max)
    AssumptionReport assumptions;
    CriticalIndices indices;

    bool operator==(const BoundReport&) const = default;
};

BoundReport evaluate_bounds(const SystemConfig& config, double delta_prime,
                            const AssumptionThresholds& thresholds = {});

/// max over i in [from, I] (1-based) of mu_min sigma2_i / (lambda l_i delta_i),
/// with the maximizing index.
std::pair<double, std::size_t> universal_lower_bound(const SystemConfig& config, const DerivedParams& p,
                                                     std::size_t from);

/// Infinite-server tail bounds for Phi = sum c_i l_i (X_i - lambda_i/mu_i).
double mminf_tail(const SystemConfig& config, const std::vector<double>& c, double k);
/// Bound e^{-j} on P(Phi <= -alpha - beta j); throws if alpha*beta is too small.
double mminf_tail_linear(const SystemConfig& config, const std::vector<double>& c, double alpha, double beta,
                         double j);
/// Bound on E[Phi^-].
double mminf_negative_part(const SystemConfig& config, const std::vector<double>& c);

struct RegimeOrders {
    double fcfs_exponent = 0.0;
    double lower_exponent = 0.0;
    double snf_exponent = 0.0;
    double fcfs = 0.0;
    double lower = 0.0;
    double snf = 0.0;
    bool interior = false;  // strict inequalities of the parameterized region hold
};

RegimeOrders regime_orders(double n, double alpha, double gamma);

}  // namespace msj
