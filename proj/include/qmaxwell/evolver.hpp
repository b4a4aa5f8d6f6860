#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qmaxwell/ansatz.hpp"
#include "qmaxwell/mclachlan.hpp"

namespace qmaxwell::evolver {

/// Truncated-SVD pseudoinverse: singular values below rho * sigma_max are dropped.
struct SvdCutoff {
    double rho = 1e-8;
};

/// Tikhonov shift: solve (Lambda + lambda I) x = C.
struct Ridge {
    double lambda = 0.0;
};

using Regularization = std::variant<SvdCutoff, Ridge>;

/// Throws InvalidArgument unless rho is in (0, 1) or lambda >= 0.
void validate_regularization(const Regularization& regularization);

struct FlowDiagnostics {
    double residual = 0.0;            ///< ||Lambda x - C||
    double smallest_retained = 0.0;   ///< smallest singular value kept (ridge: shifted)
    double condition = 0.0;           ///< sigma_max / smallest_retained
    int rank = 0;
    bool degenerate = false;          ///< nothing survived the cutoff; flow set to zero
};

struct FlowSolution {
    Eigen::VectorXd theta_dot;
    FlowDiagnostics diagnostics;
};

/// Regularized solve of Lambda theta_dot = C. A system with no retained
/// singular values yields a zero flow flagged as degenerate.
FlowSolution solve_flow(const Eigen::MatrixXd& lambda, const Eigen::VectorXd& c,
                        const Regularization& regularization);

/// theta + dt * theta_dot.
std::vector<double> step(std::span<const double> theta, const Eigen::VectorXd& theta_dot,
                         double dt);

/// Explicit Euler is the default; classical RK4 reuses the same flow solve at
/// the intermediate stages.
enum class Integrator { euler, rk4 };
Integrator parse_integrator(const std::string& text);
std::string to_string(Integrator integrator);

struct EvolutionConfig {
    double dt = 0.01;
    double t_final = 0.0;
    Regularization regularization = SvdCutoff{};
    mclachlan::EvaluationMode mode = mclachlan::Exact{};
    int snapshot_stride = 1;
    mclachlan::Options options{};
    Integrator integrator = Integrator::euler;

    void validate() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> thetas;
    std::vector<StateVector> states;
    /// One entry per integration step.
    std::vector<FlowDiagnostics> diagnostics;
    mclachlan::CircuitTally tally;
    int steps = 0;
};

/// Explicit-Euler integration of the McLachlan flow from theta0, re-evaluating
/// Lambda and C every step. Snapshots are taken at step 0 and every
/// `snapshot_stride` steps.
Trajectory evolve(const ansatz::GateSequence& seq, std::span<const double> theta0,
                  const pauli_decomp::PauliSum& generator, const EvolutionConfig& config);

}  // namespace qmaxwell::evolver
