#pragma once

#include <span>
#include <string>
#include <vector>

#include "qmaxwell/gates.hpp"

namespace qmaxwell::ansatz {

/// The four TwoLocal families: R_Y rotation columns with either CNOT or
/// controlled-R_Y entanglers, on a nearest-neighbour chain or all pairs.
enum class Family { ry_linear, ry_full, rycry_linear, rycry_full };

Family parse_family(const std::string& text);
std::string to_string(Family f);
inline constexpr Family kAllFamilies[] = {Family::ry_linear, Family::ry_full,
                                          Family::rycry_linear, Family::rycry_full};

struct AnsatzSpec {
    Family family = Family::ry_linear;
    int n_qubits = 2;
    int layers = 1;

    /// Throws InvalidArgument when layers < 1 or an entangling family has < 2 qubits.
    void validate() const;
};

/// Parameters from the closed-form counts: L*N for the CNOT families,
/// (L + N - 1)*N and (L + C(N,2))*N for the CRY families.
int param_count(const AnsatzSpec& spec);

/// Circuit with parameter slots. Parameter i drives gates[slots[i]]; slots are
/// increasing, so parameters are numbered in circuit order.
struct GateSequence {
    int n_qubits = 0;
    Circuit gates;
    std::vector<std::size_t> slots;

    std::size_t param_count() const { return slots.size(); }
};

/// Layout per family:
///  - Ry-*: L repetitions of (R_Y column, CNOT entangler block).
///  - RyCRy-*: L R_Y columns and N CRY entangler blocks, interleaved one for one
///    starting with a rotation column; the surplus kind is appended at the end.
/// Linear entanglers act on (q, q+1); full entanglers on every pair (c < t) in
/// lexicographic order.
GateSequence build(const AnsatzSpec& spec);

/// Copy of the circuit with parameter angles bound; theta.size() must equal
/// the slot count.
Circuit bind(const GateSequence& seq, std::span<const double> theta);

/// U(theta)|0...0>.
StateVector state(const GateSequence& seq, std::span<const double> theta);
StateVector state(const AnsatzSpec& spec, std::span<const double> theta);

/// dU_i/dtheta_i = sum_k a_k U_i sigma_k.
struct DerivativeTerm {
    Complex coefficient;
    PauliString sigma;
};

/// RY -> {(-i/2, Y_t)}; CRY -> {(-i/4, I_c Y_t), (+i/4, Z_c Y_t)}.
std::vector<DerivativeTerm> derivative_expansion(const GateSequence& seq, std::size_t param);

/// Columns d|phi>/d theta_i = sum_k a_k V_{k,i}|0>, where V_{k,i} is the circuit
/// with sigma_k inserted right before gate i.
std::vector<StateVector> jacobian_states(const GateSequence& seq, std::span<const double> theta);

/// V_{k,i}|0> for a single (param, term) pair.
StateVector derivative_branch(const GateSequence& seq, std::span<const double> theta,
                              std::size_t param, std::size_t term);

/// Longest path through the gate dependency DAG (gates on disjoint qubits
/// share a time step).
int logical_depth(const GateSequence& seq);
int logical_depth(const AnsatzSpec& spec);

}  // namespace qmaxwell::ansatz
