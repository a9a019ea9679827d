#pragma once

// Closed-form reference values computed independently of the library. Tests
// compare library output against these instead of against numbers typed in
// by hand.

#include <cmath>

namespace oracle {

// M/M/c waiting probability by direct summation of the stationary
// distribution (no Erlang-B recursion).
inline double erlang_c_direct(int c, double lambda, double mu) {
    const double a = lambda / mu;
    const double rho = a / c;
    double term = 1.0;  // a^k / k!
    double below = 0.0;
    for (int k = 0; k < c; ++k) {
        below += term;
        term *= a / (k + 1);
    }
    const double queued = term / (1.0 - rho);  // a^c / (c! (1 - rho))
    return queued / (below + queued);
}

inline double mmc_mean_wait(int c, double lambda, double mu) {
    return erlang_c_direct(c, lambda, mu) / (c * mu - lambda);
}

inline double mm1_mean_wait(double lambda, double mu) { return lambda / (mu * (mu - lambda)); }
inline double mm1_mean_queue(double lambda, double mu) {
    const double rho = lambda / mu;
    return rho * rho / (1.0 - rho);
}

// Slack and variability straight from their defining sums.
struct Moments {
    double delta;
    double sigma2;
};

template <class Types>
Moments moments(int n, const Types& types) {
    double busy = 0.0, var = 0.0;
    for (const auto& t : types) {
        const double w = t.server_need / t.service_rate;
        busy += t.arrival_rate * w;
        var += t.arrival_rate * w * w;
    }
    return {n - busy, var};
}

// Two-sided CLT band for a sample mean of K i.i.d. draws with the given
// standard deviation.
inline double clt_band(double sd, double samples, double z = 3.0) { return z * sd / std::sqrt(samples); }

}  // namespace oracle
