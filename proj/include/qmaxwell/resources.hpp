#pragma once

#include <cstdint>

#include "qmaxwell/ansatz.hpp"
#include "qmaxwell/mclachlan.hpp"

namespace qmaxwell::resources {

struct CircuitCounts {
    std::uint64_t lambda_circuits = 0;  ///< d^2
    std::uint64_t c_circuits = 0;       ///< d
};

/// Headline per-step circuit counts (d^2, d). Throws for d < 1.
CircuitCounts circuits_per_step(std::uint64_t d);

struct StepReport {
    CircuitCounts headline;
    mclachlan::ExpandedCounts expanded;
};

StepReport step_report(const ansatz::GateSequence& seq, std::size_t generator_terms);

/// Order-of-magnitude query estimate t d^2 / (dt eps^2); the constant is 1.
inline constexpr double kQueryConstant = 1.0;
double query_cost(double t_total, double dt, double d, double eps);

}  // namespace qmaxwell::resources
