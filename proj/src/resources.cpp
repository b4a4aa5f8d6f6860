#include "qmaxwell/resources.hpp"

#include "qmaxwell/errors.hpp"

namespace qmaxwell::resources {

CircuitCounts circuits_per_step(std::uint64_t d) {
    if (d < 1) throw InvalidArgument("parameter count must be at least 1");
    return {d * d, d};
}

StepReport step_report(const ansatz::GateSequence& seq, std::size_t generator_terms) {
    return {circuits_per_step(seq.param_count()),
            mclachlan::expanded_counts(seq, generator_terms)};
}

double query_cost(double t_total, double dt, double d, double eps) {
    if (!(t_total > 0.0 && dt > 0.0 && d > 0.0 && eps > 0.0)) {
        throw InvalidArgument("query cost inputs must be positive");
    }
    return kQueryConstant * t_total * d * d / (dt * eps * eps);
}

}  // namespace qmaxwell::resources
