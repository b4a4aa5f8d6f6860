#include "qmaxwell/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qmaxwell/errors.hpp"

namespace qmaxwell::metrics {

namespace {

double from_overlap(double overlap_sq) {
    return std::sqrt(std::clamp(1.0 - overlap_sq, 0.0, 1.0));
}

void check_alignment(std::size_t na, std::size_t nb, double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("alignment tolerance needs dt > 0");
    if (na != nb) {
        throw DimensionMismatch("trajectories have " + std::to_string(na) + " and " +
                                std::to_string(nb) + " snapshots");
    }
    if (na == 0) throw InvalidArgument("trajectories are empty");
}

void check_time(double ta, double tb, double dt, std::size_t k) {
    if (std::abs(ta - tb) > 0.5 * dt) {
        throw InvalidArgument("snapshot " + std::to_string(k) + " misaligned: t=" +
                              std::to_string(ta) + " vs t=" + std::to_string(tb));
    }
}

StateVector as_state(const Eigen::VectorXd& v) {
    return StateVector::from_real(std::span<const double>(v.data(), v.size()));
}

}  // namespace

double trace_error(const StateVector& a, const StateVector& b) {
    if (a.dimension() != b.dimension()) {
        throw DimensionMismatch("trace error operands differ in dimension");
    }
    // One pass with matching arithmetic, so identical inputs give exactly zero.
    double na = 0.0;
    double nb = 0.0;
    Complex ov{};
    for (std::size_t k = 0; k < a.dimension(); ++k) {
        na += std::norm(a[k]);
        nb += std::norm(b[k]);
        ov += std::conj(a[k]) * b[k];
    }
    if (na == 0.0 || nb == 0.0) throw InvalidArgument("trace error of a zero vector");
    return from_overlap(std::norm(ov) / (na * nb));
}

double trace_error(const StateVector& quantum, const Eigen::VectorXd& classical) {
    if (static_cast<Eigen::Index>(quantum.dimension()) != classical.size()) {
        throw DimensionMismatch("quantum state has dimension " +
                                std::to_string(quantum.dimension()) + ", classical vector " +
                                std::to_string(classical.size()));
    }
    return trace_error(quantum, as_state(classical));
}

double mean_error(const std::vector<double>& per_step) {
    if (per_step.empty()) throw InvalidArgument("empty error series");
    return std::accumulate(per_step.begin(), per_step.end(), 0.0) /
           static_cast<double>(per_step.size());
}

ErrorReport time_average_trace_error(const std::vector<TimedState>& quantum,
                                     const std::vector<TimedVector>& classical, double dt) {
    check_alignment(quantum.size(), classical.size(), dt);
    ErrorReport report;
    for (std::size_t k = 0; k < quantum.size(); ++k) {
        check_time(quantum[k].time, classical[k].time, dt, k);
        const double e = trace_error(quantum[k].state, classical[k].values);
        report.times.push_back(quantum[k].time);
        report.per_step_trace_error.push_back(e);
        report.per_step_fidelity.push_back(1.0 - e * e);
    }
    report.epsilon_tr = mean_error(report.per_step_trace_error);
    return report;
}

ErrorReport time_average_trace_error(const std::vector<TimedVector>& a,
                                     const std::vector<TimedVector>& b, double dt) {
    std::vector<TimedState> qa;
    qa.reserve(a.size());
    for (const auto& s : a) qa.push_back({s.time, as_state(s.values)});
    return time_average_trace_error(qa, b, dt);
}

}  // namespace qmaxwell::metrics
