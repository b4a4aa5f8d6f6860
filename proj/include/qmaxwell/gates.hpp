#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmaxwell/pauli.hpp"
#include "qmaxwell/state_vector.hpp"

namespace qmaxwell {

namespace gate {

/// R_Y(angle) = exp(-i angle Y / 2) = [[cos a/2, -sin a/2], [sin a/2, cos a/2]].
struct RY {
    double angle = 0.0;
    int target = 0;
};

/// |0><0| (x) I + |1><1| (x) R_Y(angle).
struct CRY {
    double angle = 0.0;
    int control = 0;
    int target = 0;
};

struct CNOT {
    int control = 0;
    int target = 0;
};

struct Pauli {
    PauliString word;
};

/// diag(1, e^{i angle}).
struct Phase {
    double angle = 0.0;
    int target = 0;
};

struct Hadamard {
    int target = 0;
};

/// H * S^dagger: rotates the Y eigenbasis onto the computational basis.
struct SdgH {
    int target = 0;
};

}  // namespace gate

using GateKind = std::variant<gate::RY, gate::CRY, gate::CNOT, gate::Pauli, gate::Phase,
                              gate::Hadamard, gate::SdgH>;

struct Gate {
    GateKind kind;
    /// When set, the gate acts only on the subspace where this qubit is |1>.
    std::optional<int> ancilla_control;

    /// Qubits the gate acts on or is controlled by, excluding the ancilla.
    std::vector<int> qubits() const;
    std::string name() const;
};

using Circuit = std::vector<Gate>;

Gate ry(double angle, int target);
Gate cry(double angle, int control, int target);
Gate cnot(int control, int target);
Gate pauli(PauliString word);
Gate phase(double angle, int target);
Gate hadamard(int target);
Gate sdg_h(int target);
Gate pauli_x(int n_qubits, int target);

/// Throws InvalidGate unless every index is distinct and below n_qubits.
void validate(const Gate& g, int n_qubits);

void apply_gate_inplace(StateVector& state, const Gate& g);
void apply_circuit_inplace(StateVector& state, const Circuit& circuit);

/// U*state; the input is consumed so callers can move in a scratch state.
StateVector apply_gate(StateVector state, const Gate& g);
StateVector apply_circuit(StateVector state, const Circuit& circuit);

/// Applies the sequence conditioned on `ancilla` being |1>. The ancilla must be
/// disjoint from every gate's qubits.
StateVector apply_controlled(StateVector state, const Circuit& sequence, int ancilla);

/// Copy of `g` with an ancilla control attached; throws on overlap.
Gate controlled_on(const Gate& g, int ancilla);

}  // namespace qmaxwell
