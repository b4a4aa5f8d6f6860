#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qmaxwell/ansatz.hpp"
#include "qmaxwell/maxwell.hpp"
#include "qmaxwell/mclachlan.hpp"

namespace qmaxwell::state_prep {

/// Gain sequences a_k = a / (k + 1 + A)^alpha, c_k = c / (k + 1)^gamma.
struct SpsaConfig {
    int iterations = 2000;
    double a = 0.2;
    double c = 0.1;
    double A = 100.0;
    double alpha = 0.602;
    double gamma = 0.101;
    int restarts = 3;
    std::uint64_t seed = 0;
    /// A restart stops early once its cost reaches this value.
    double tolerance = 0.0;

    void validate() const;
};

struct FitResult {
    std::vector<double> theta0;
    double final_cost = 1.0;
    /// Cost of the iterate at each iteration of the best restart.
    std::vector<double> cost_history;
    bool converged = false;
    int iterations_run = 0;
    int best_restart = 0;
};

/// Flattened Gaussian initial condition, normalized, as real amplitudes on
/// log2(4 n_grid) qubits.
StateVector target_state(const fdtd::MaxwellConfig& config, double center, double width);

/// |<phi(theta)|target>|^2. Shot mode runs a SWAP test between the ansatz
/// register and a register loaded with `target`; the estimate is clamped to [0, 1].
double fidelity(const ansatz::GateSequence& seq, std::span<const double> theta,
                const StateVector& target, const mclachlan::EvaluationMode& mode);

/// Unclamped SWAP-test estimator 2 P(ancilla = 0) - 1.
double swap_test(const StateVector& a, const StateVector& b, const mclachlan::EvaluationMode& mode,
                 std::uint64_t circuit_id = 0);

/// 1 - fidelity.
double cost(const ansatz::GateSequence& seq, std::span<const double> theta,
            const StateVector& target, const mclachlan::EvaluationMode& mode);

/// Best-of-restarts SPSA minimization of the cost. Restart 0 starts from
/// `initial` when given; the others start uniformly in [-pi, pi).
FitResult spsa_fit(const ansatz::GateSequence& seq, const StateVector& target,
                   const SpsaConfig& config, double eps_init,
                   const mclachlan::EvaluationMode& mode = mclachlan::Exact{},
                   std::optional<std::vector<double>> initial = std::nullopt);

struct DepthSearchResult {
    ansatz::AnsatzSpec spec;
    FitResult fit;
};

/// Increases the layer count from spec.layers up to max_layers until the fit
/// reaches eps_init; returns the first converged (or last tried) depth.
DepthSearchResult fit_increasing_depth(ansatz::AnsatzSpec spec, const StateVector& target,
                                       const SpsaConfig& config, double eps_init,
                                       int max_layers,
                                       const mclachlan::EvaluationMode& mode = mclachlan::Exact{});

/// Distance between the normalized initial condition on n_grid nodes,
/// linearly interpolated (periodically) onto a grid 16x finer, and the
/// normalized fine-grid sampling.
double discretization_error(double center, double width, double domain_length, int n_grid);

inline constexpr int kMaxGrid = 1 << 14;
inline constexpr int kRefinementFactor = 16;

/// Smallest power-of-two n_grid >= 4 with discretization_error < eps.
int refine_mesh(double center, double width, double domain_length, double eps);

/// +1 or -1 so that sign * state agrees with target on the state's
/// largest-magnitude amplitude.
double sign_alignment(const StateVector& state, const StateVector& target);

}  // namespace qmaxwell::state_prep
