#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmaxwell/state_vector.hpp"

namespace qmaxwell::metrics {

struct ErrorReport {
    std::vector<double> times;
    std::vector<double> per_step_trace_error;
    std::vector<double> per_step_fidelity;
    double epsilon_tr = 0.0;
    /// Free-form run description (n_grid, family, layers, dt, mode, ...).
    std::map<std::string, std::string> metadata;
};

/// sqrt(1 - |<q|u/|u|>|^2), clamped to [0, 1]. Throws on a zero classical vector.
double trace_error(const StateVector& quantum, const Eigen::VectorXd& classical);

/// Same measure between two normalized-on-the-fly real or complex vectors.
double trace_error(const StateVector& a, const StateVector& b);

struct TimedState {
    double time = 0.0;
    StateVector state;
};

struct TimedVector {
    double time = 0.0;
    Eigen::VectorXd values;
};

/// Element-wise trace error and its mean. Snapshots must pair up one to one
/// with time stamps agreeing to within dt / 2.
ErrorReport time_average_trace_error(const std::vector<TimedState>& quantum,
                                     const std::vector<TimedVector>& classical, double dt);

ErrorReport time_average_trace_error(const std::vector<TimedVector>& a,
                                     const std::vector<TimedVector>& b, double dt);

/// Mean of a per-step error series. Throws on an empty series.
double mean_error(const std::vector<double>& per_step);

}  // namespace qmaxwell::metrics
