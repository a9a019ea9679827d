#include <doctest.h>

#include <cmath>

#include "msj/sweep.hpp"

using namespace msj;

TEST_CASE("SNF-NP stays within 25% of SNF on Set One") {
    SweepSpec spec;
    spec.n_list = {256, 1024, 4096};
    spec.policies = {PolicyKind::SNF, PolicyKind::SNF_NP};
    spec.seeds = {1};
    const auto result = run_sweep(spec);
    REQUIRE(result.runs.size() == 6);
    for (std::size_t k = 0; k < result.runs.size(); k += 2) {
        const auto& snf = result.runs[k];
        const auto& np = result.runs[k + 1];
        REQUIRE(snf.policy == PolicyKind::SNF);
        REQUIRE(np.policy == PolicyKind::SNF_NP);
        CAPTURE(snf.n);
        CHECK(std::abs(np.mean_wait / snf.mean_wait - 1.0) <= 0.25);
    }
}
