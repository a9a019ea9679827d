#pragma once

#include <optional>
#include <span>
#include <vector>

#include "msj/model.hpp"
#include "msj/sim.hpp"

namespace msj {

struct BatchMeansEstimate {
    double mean = 0.0;
    double half_width = 0.0;  // 95% Student-t
    int batches = 0;
    std::vector<double> per_batch;

    bool contains(double value) const { return value >= mean - half_width && value <= mean + half_width; }
};

/// Two-sided 95% Student-t quantile with the given degrees of freedom.
double student_t_975(int dof);

/// Splits samples into `batches` contiguous spans of equal length. When the
/// count is not divisible, the leading remainder is dropped.
BatchMeansEstimate batch_means(std::span<const double> samples, int batches = 20);

/// CI from precomputed, equally weighted batch values (e.g. equal-time
/// batches of a time average).
BatchMeansEstimate estimate_from_batches(std::vector<double> per_batch);

struct MeanWaitReport {
    std::optional<BatchMeansEstimate> overall;
    std::vector<std::optional<BatchMeansEstimate>> per_type;  // absent when a type has too few samples
    double overall_direct = 0.0;   // plain mean of post-warm-up W(k)
    double weighted_direct = 0.0;  // sum_i (lambda_hat_i / lambda_hat) * plain mean of type i
    std::size_t samples = 0;
};

MeanWaitReport mean_waiting_time(const SimResult& result, const SystemConfig& config, int batches = 20);

/// Time-average of 1{sum l_i X_i >= servers}. By PASTA this is the
/// probability that an arrival has to queue.
BatchMeansEstimate queueing_probability(const SimResult& result);

/// Per-type and aggregate time averages over equal-time batches.
BatchMeansEstimate time_average_x(const SimResult& result, std::size_t type);
BatchMeansEstimate time_average_z(const SimResult& result, std::size_t type);
BatchMeansEstimate time_average_q(const SimResult& result, std::size_t type);
BatchMeansEstimate time_average_workload(const SimResult& result);
/// Ratio Q_i / Q_sum computed per batch.
BatchMeansEstimate queue_fraction(const SimResult& result, std::size_t type);

}  // namespace msj
