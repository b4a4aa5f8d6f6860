#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "qmaxwell/ansatz.hpp"
#include "qmaxwell/pauli_decomp.hpp"

namespace qmaxwell::mclachlan {

struct Exact {};

/// Finite sampling: every Hadamard-test circuit is measured `shots` times.
struct Shots {
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
};

using EvaluationMode = std::variant<Exact, Shots>;

/// Parses "exact" or "shots:M".
EvaluationMode parse_mode(const std::string& text, std::uint64_t seed);
std::string to_string(const EvaluationMode& mode);
bool is_exact(const EvaluationMode& mode);
/// Same mode with the sampling seed replaced (no-op for exact).
EvaluationMode reseeded(const EvaluationMode& mode, std::uint64_t seed);

/// Running tally of executed Hadamard-test circuits.
struct CircuitTally {
    std::uint64_t lambda_circuits = 0;
    std::uint64_t c_circuits = 0;
    std::uint64_t shots = 0;
};

/// Re(e^{i phase} <psi| A^dagger B |psi>) with |psi> = prefix|0...0>, measured
/// on an extra ancilla qubit (index n_qubits): H, A controlled on |0>, B
/// controlled on |1>, phase, H. Shot mode returns 2*(fraction of zeros) - 1.
double hadamard_test(int n_qubits, const Circuit& prefix, const Circuit& a, const Circuit& b,
                     double phase, const EvaluationMode& mode, std::uint64_t circuit_id = 0);

struct Options {
    /// Subtract the global-phase terms of the normalized-manifold McLachlan
    /// equations (exact mode only). These vanish for real-amplitude ansatze.
    bool phase_correction = false;
};

struct McLachlanSystem {
    Eigen::MatrixXd lambda;
    Eigen::VectorXd c;
    EvaluationMode mode;
};

/// Lambda_ij = Re<d_i phi|d_j phi>.
Eigen::MatrixXd lambda_matrix(const ansatz::GateSequence& seq, std::span<const double> theta,
                              const EvaluationMode& mode, CircuitTally* tally = nullptr,
                              const Options& options = {});

/// C_i = Re<d_i phi| G |phi>.
Eigen::VectorXd c_vector(const ansatz::GateSequence& seq, std::span<const double> theta,
                         const pauli_decomp::PauliSum& generator, const EvaluationMode& mode,
                         CircuitTally* tally = nullptr, const Options& options = {});

McLachlanSystem evaluate(const ansatz::GateSequence& seq, std::span<const double> theta,
                         const pauli_decomp::PauliSum& generator, const EvaluationMode& mode,
                         CircuitTally* tally = nullptr, const Options& options = {});

/// Number of Hadamard-test circuits one shot-mode evaluation issues:
/// sum_{i,j} K_i K_j for Lambda and sum_i K_i * (Pauli terms) for C, where K_i
/// is the derivative-expansion length of parameter i.
struct ExpandedCounts {
    std::uint64_t lambda_circuits = 0;
    std::uint64_t c_circuits = 0;
};
ExpandedCounts expanded_counts(const ansatz::GateSequence& seq, std::size_t generator_terms);

}  // namespace qmaxwell::mclachlan
