#include "qmaxwell/gates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "qmaxwell/errors.hpp"

namespace qmaxwell {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

struct Matrix2 {
    Complex m00, m01, m10, m11;
};

// Applies a 2x2 matrix on `target` over the subspace selected by `control_mask`.
void apply_1q(std::span<Complex> amps, int target, const Matrix2& m,
              std::uint64_t control_mask) {
    const std::uint64_t t = bit(target);
    const std::uint64_t dim = amps.size();
    for (std::uint64_t j = 0; j < dim; ++j) {
        if (j & t) continue;
        if ((j & control_mask) != control_mask) continue;
        const Complex a0 = amps[j];
        const Complex a1 = amps[j | t];
        amps[j] = m.m00 * a0 + m.m01 * a1;
        amps[j | t] = m.m10 * a0 + m.m11 * a1;
    }
}

// Real-valued specialization keeps RY/CRY circuits exactly real.
void apply_ry(std::span<Complex> amps, int target, double angle, std::uint64_t control_mask) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::uint64_t t = bit(target);
    const std::uint64_t dim = amps.size();
    for (std::uint64_t j = 0; j < dim; ++j) {
        if (j & t) continue;
        if ((j & control_mask) != control_mask) continue;
        const Complex a0 = amps[j];
        const Complex a1 = amps[j | t];
        amps[j] = c * a0 - s * a1;
        amps[j | t] = s * a0 + c * a1;
    }
}

void apply_x(std::span<Complex> amps, int target, std::uint64_t control_mask) {
    const std::uint64_t t = bit(target);
    const std::uint64_t dim = amps.size();
    for (std::uint64_t j = 0; j < dim; ++j) {
        if (j & t) continue;
        if ((j & control_mask) != control_mask) continue;
        std::swap(amps[j], amps[j | t]);
    }
}

std::vector<int> pauli_support(const PauliString& w) {
    std::vector<int> qs;
    for (int q = 0; q < w.n_qubits(); ++q) {
        if (w.letter(q) != 'I') qs.push_back(q);
    }
    return qs;
}

}  // namespace

std::vector<int> Gate::qubits() const {
    return std::visit(
        Overloaded{
            [](const gate::RY& g) { return std::vector<int>{g.target}; },
            [](const gate::CRY& g) { return std::vector<int>{g.control, g.target}; },
            [](const gate::CNOT& g) { return std::vector<int>{g.control, g.target}; },
            [](const gate::Pauli& g) { return pauli_support(g.word); },
            [](const gate::Phase& g) { return std::vector<int>{g.target}; },
            [](const gate::Hadamard& g) { return std::vector<int>{g.target}; },
            [](const gate::SdgH& g) { return std::vector<int>{g.target}; },
        },
        kind);
}

std::string Gate::name() const {
    return std::visit(Overloaded{
                          [](const gate::RY&) { return std::string("RY"); },
                          [](const gate::CRY&) { return std::string("CRY"); },
                          [](const gate::CNOT&) { return std::string("CNOT"); },
                          [](const gate::Pauli& g) { return "P[" + g.word.to_string() + "]"; },
                          [](const gate::Phase&) { return std::string("PHASE"); },
                          [](const gate::Hadamard&) { return std::string("H"); },
                          [](const gate::SdgH&) { return std::string("SDG_H"); },
                      },
                      kind);
}

Gate ry(double angle, int target) { return {gate::RY{angle, target}, std::nullopt}; }
Gate cry(double angle, int control, int target) {
    return {gate::CRY{angle, control, target}, std::nullopt};
}
Gate cnot(int control, int target) { return {gate::CNOT{control, target}, std::nullopt}; }
Gate pauli(PauliString word) { return {gate::Pauli{std::move(word)}, std::nullopt}; }
Gate phase(double angle, int target) { return {gate::Phase{angle, target}, std::nullopt}; }
Gate hadamard(int target) { return {gate::Hadamard{target}, std::nullopt}; }
Gate sdg_h(int target) { return {gate::SdgH{target}, std::nullopt}; }
Gate pauli_x(int n_qubits, int target) {
    return pauli(PauliString::single(n_qubits, target, 'X'));
}

void validate(const Gate& g, int n_qubits) {
    if (const auto* p = std::get_if<gate::Pauli>(&g.kind)) {
        if (p->word.n_qubits() != n_qubits) {
            throw InvalidGate("Pauli word " + p->word.to_string() + " does not span " +
                              std::to_string(n_qubits) + " qubits");
        }
    }
    auto qs = g.qubits();
    if (g.ancilla_control) qs.push_back(*g.ancilla_control);
    for (int q : qs) {
        if (q < 0 || q >= n_qubits) {
            throw InvalidGate(g.name() + ": qubit " + std::to_string(q) + " out of range for " +
                              std::to_string(n_qubits) + " qubits");
        }
    }
    auto sorted = qs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidGate(g.name() + ": repeated qubit index");
    }
}

void apply_gate_inplace(StateVector& state, const Gate& g) {
    validate(g, state.n_qubits());
    const std::uint64_t anc = g.ancilla_control ? bit(*g.ancilla_control) : 0;
    auto amps = state.amplitudes();
    std::visit(
        Overloaded{
            [&](const gate::RY& r) { apply_ry(amps, r.target, r.angle, anc); },
            [&](const gate::CRY& r) { apply_ry(amps, r.target, r.angle, anc | bit(r.control)); },
            [&](const gate::CNOT& c) { apply_x(amps, c.target, anc | bit(c.control)); },
            [&](const gate::Pauli& p) { apply_pauli_inplace(amps, p.word, anc); },
            [&](const gate::Phase& p) {
                apply_1q(amps, p.target, {1.0, 0.0, 0.0, std::polar(1.0, p.angle)}, anc);
            },
            [&](const gate::Hadamard& h) {
                const double r = std::numbers::sqrt2 / 2.0;
                apply_1q(amps, h.target, {r, r, r, -r}, anc);
            },
            [&](const gate::SdgH& h) {
                // H * diag(1, -i)
                const double r = std::numbers::sqrt2 / 2.0;
                const Complex mi{0.0, -1.0};
                apply_1q(amps, h.target, {r, r * mi, r, -r * mi}, anc);
            },
        },
        g.kind);
}

void apply_circuit_inplace(StateVector& state, const Circuit& circuit) {
    for (const auto& g : circuit) apply_gate_inplace(state, g);
}

StateVector apply_gate(StateVector state, const Gate& g) {
    apply_gate_inplace(state, g);
    return state;
}

StateVector apply_circuit(StateVector state, const Circuit& circuit) {
    apply_circuit_inplace(state, circuit);
    return state;
}

Gate controlled_on(const Gate& g, int ancilla) {
    if (g.ancilla_control) throw InvalidGate(g.name() + ": gate already ancilla-controlled");
    const auto qs = g.qubits();
    if (std::find(qs.begin(), qs.end(), ancilla) != qs.end()) {
        throw InvalidGate(g.name() + ": ancilla " + std::to_string(ancilla) +
                          " overlaps a gate qubit");
    }
    Gate out = g;
    out.ancilla_control = ancilla;
    return out;
}

StateVector apply_controlled(StateVector state, const Circuit& sequence, int ancilla) {
    for (const auto& g : sequence) apply_gate_inplace(state, controlled_on(g, ancilla));
    return state;
}

}  // namespace qmaxwell
