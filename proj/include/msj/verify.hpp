#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msj/model.hpp"

namespace msj {

enum class VerifySuite { Coupling, Oracle, Tails, Drift };

std::optional<VerifySuite> parse_suite(std::string_view name);
std::string_view to_string(VerifySuite suite);

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    VerifySuite suite = VerifySuite::Coupling;
    std::vector<VerifyCheck> checks;
    bool passed() const;
};

/// Runs the named invariant suite with fixed seeds.
VerifyReport run_verify(VerifySuite suite);

/// Two-type SNF config used for CTMC cross-checks: n = 6, l = (1, 3),
/// lambda = (1, 0.5), mu = (1, 1), so delta = 3.5 > l_max.
SystemConfig two_type_snf_config();

/// Weights c_i = 1 / mu_i, the workload weighting used for tail checks.
std::vector<double> workload_weights(const SystemConfig& config);

}  // namespace msj
