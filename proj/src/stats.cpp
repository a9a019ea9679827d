#include "msj/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace msj {

double student_t_975(int dof) {
    if (dof < 1) throw std::invalid_argument("t quantile needs at least one degree of freedom");
    boost::math::students_t dist(dof);
    return boost::math::quantile(dist, 0.975);
}

BatchMeansEstimate estimate_from_batches(std::vector<double> per_batch) {
    const int b = static_cast<int>(per_batch.size());
    if (b < 2) throw std::invalid_argument("batch means needs at least two batches");
    BatchMeansEstimate e;
    e.batches = b;
    e.mean = std::accumulate(per_batch.begin(), per_batch.end(), 0.0) / b;
    double ss = 0.0;
    for (double v : per_batch) ss += (v - e.mean) * (v - e.mean);
    const double var = ss / (b - 1);
    e.half_width = student_t_975(b - 1) * std::sqrt(var / b);
    e.per_batch = std::move(per_batch);
    return e;
}

BatchMeansEstimate batch_means(std::span<const double> samples, int batches) {
    if (batches < 2) throw std::invalid_argument("batch means needs at least two batches");
    if (samples.size() < static_cast<std::size_t>(batches))
        throw std::invalid_argument("fewer samples than batches");
    const std::size_t per = samples.size() / batches;
    const std::size_t skip = samples.size() - per * batches;
    std::vector<double> means;
    means.reserve(batches);
    for (int b = 0; b < batches; ++b) {
        const auto first = samples.begin() + skip + b * per;
        means.push_back(std::accumulate(first, first + per, 0.0) / per);
    }
    return estimate_from_batches(std::move(means));
}

MeanWaitReport mean_waiting_time(const SimResult& result, const SystemConfig& config, int batches) {
    const std::size_t types = config.num_types();
    const auto first = result.waits.begin() + static_cast<std::ptrdiff_t>(result.first_measured);
    std::span<const double> measured(first, result.waits.end());

    std::vector<std::vector<double>> by_type(types);
    for (std::size_t k = result.first_measured; k < result.waits.size(); ++k)
        by_type[result.job_types[k]].push_back(result.waits[k]);

    MeanWaitReport r;
    r.samples = measured.size();
    if (measured.size() >= static_cast<std::size_t>(batches)) r.overall = batch_means(measured, batches);
    if (!measured.empty())
        r.overall_direct = std::accumulate(measured.begin(), measured.end(), 0.0) / measured.size();

    for (std::size_t i = 0; i < types; ++i) {
        const auto& w = by_type[i];
        if (w.size() >= static_cast<std::size_t>(batches)) {
            r.per_type.emplace_back(batch_means(w, batches));
        } else {
            r.per_type.emplace_back(std::nullopt);
        }
        if (!w.empty() && !measured.empty()) {
            // lambda_hat_i / lambda_hat reduces to the sample share N_i / N.
            const double share = static_cast<double>(w.size()) / measured.size();
            r.weighted_direct += share * (std::accumulate(w.begin(), w.end(), 0.0) / w.size());
        }
    }
    return r;
}

namespace {

template <class Pick>
BatchMeansEstimate over_batches(const SimResult& result, Pick pick) {
    std::vector<double> values;
    values.reserve(result.batches.size());
    for (const auto& b : result.batches) values.push_back(pick(b));
    return estimate_from_batches(std::move(values));
}

}  // namespace

BatchMeansEstimate queueing_probability(const SimResult& result) {
    return over_batches(result, [](const TimeAverages& b) { return b.queueing; });
}

BatchMeansEstimate time_average_x(const SimResult& result, std::size_t type) {
    return over_batches(result, [type](const TimeAverages& b) { return b.x.at(type); });
}

BatchMeansEstimate time_average_z(const SimResult& result, std::size_t type) {
    return over_batches(result, [type](const TimeAverages& b) { return b.z.at(type); });
}

BatchMeansEstimate time_average_q(const SimResult& result, std::size_t type) {
    return over_batches(result, [type](const TimeAverages& b) { return b.q.at(type); });
}

BatchMeansEstimate time_average_workload(const SimResult& result) {
    return over_batches(result, [](const TimeAverages& b) { return b.workload; });
}

BatchMeansEstimate queue_fraction(const SimResult& result, std::size_t type) {
    return over_batches(result, [type](const TimeAverages& b) {
        const double total = std::accumulate(b.q.begin(), b.q.end(), 0.0);
        return total > 0.0 ? b.q.at(type) / total : 0.0;
    });
}

}  // namespace msj
