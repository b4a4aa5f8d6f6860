#include "qmaxwell/ansatz.hpp"

#include <algorithm>
#include <utility>

#include "qmaxwell/errors.hpp"

namespace qmaxwell::ansatz {

namespace {

bool is_cry_family(Family f) { return f == Family::rycry_linear || f == Family::rycry_full; }
bool is_full(Family f) { return f == Family::ry_full || f == Family::rycry_full; }

std::vector<std::pair<int, int>> entangler_pairs(Family f, int n) {
    std::vector<std::pair<int, int>> pairs;
    if (is_full(f)) {
        for (int c = 0; c < n; ++c) {
            for (int t = c + 1; t < n; ++t) pairs.emplace_back(c, t);
        }
    } else {
        for (int q = 0; q + 1 < n; ++q) pairs.emplace_back(q, q + 1);
    }
    return pairs;
}

void append_rotation_column(GateSequence& seq) {
    for (int q = 0; q < seq.n_qubits; ++q) {
        seq.slots.push_back(seq.gates.size());
        seq.gates.push_back(ry(0.0, q));
    }
}

void append_entangler(GateSequence& seq, Family f) {
    for (const auto& [c, t] : entangler_pairs(f, seq.n_qubits)) {
        if (is_cry_family(f)) {
            seq.slots.push_back(seq.gates.size());
            seq.gates.push_back(cry(0.0, c, t));
        } else {
            seq.gates.push_back(cnot(c, t));
        }
    }
}

void set_angle(Gate& g, double angle) {
    if (auto* r = std::get_if<gate::RY>(&g.kind)) {
        r->angle = angle;
    } else if (auto* cr = std::get_if<gate::CRY>(&g.kind)) {
        cr->angle = angle;
    } else {
        throw InvalidGate("parameter slot does not hold a rotation gate");
    }
}

void check_theta(const GateSequence& seq, std::span<const double> theta) {
    if (theta.size() != seq.param_count()) {
        throw DimensionMismatch("theta has " + std::to_string(theta.size()) +
                                " entries, ansatz has " + std::to_string(seq.param_count()) +
                                " parameters");
    }
}

}  // namespace

Family parse_family(const std::string& text) {
    if (text == "Ry-Linear" || text == "ry_linear") return Family::ry_linear;
    if (text == "Ry-Full" || text == "ry_full") return Family::ry_full;
    if (text == "RyCRy-Linear" || text == "rycry_linear") return Family::rycry_linear;
    if (text == "RyCRy-Full" || text == "rycry_full") return Family::rycry_full;
    throw ParseError("unknown ansatz family '" + text +
                     "' (expected Ry-Linear|Ry-Full|RyCRy-Linear|RyCRy-Full)");
}

std::string to_string(Family f) {
    switch (f) {
        case Family::ry_linear: return "Ry-Linear";
        case Family::ry_full: return "Ry-Full";
        case Family::rycry_linear: return "RyCRy-Linear";
        case Family::rycry_full: return "RyCRy-Full";
    }
    return "?";
}

void AnsatzSpec::validate() const {
    if (layers < 1) throw InvalidArgument("ansatz needs at least one layer");
    if (n_qubits < 2) throw InvalidArgument("entangling ansatz needs at least two qubits");
    if (n_qubits > 24) throw InvalidArgument("ansatz width above 24 qubits is unsupported");
}

int param_count(const AnsatzSpec& spec) {
    spec.validate();
    const int n = spec.n_qubits;
    const int l = spec.layers;
    switch (spec.family) {
        case Family::ry_linear:
        case Family::ry_full: return l * n;
        case Family::rycry_linear: return (l + n - 1) * n;
        case Family::rycry_full: return (l + n * (n - 1) / 2) * n;
    }
    return 0;
}

GateSequence build(const AnsatzSpec& spec) {
    spec.validate();
    GateSequence seq;
    seq.n_qubits = spec.n_qubits;
    if (!is_cry_family(spec.family)) {
        for (int l = 0; l < spec.layers; ++l) {
            append_rotation_column(seq);
            append_entangler(seq, spec.family);
        }
        return seq;
    }
    const int rotation_columns = spec.layers;
    const int entangler_blocks = spec.n_qubits;
    for (int r = 0; r < std::max(rotation_columns, entangler_blocks); ++r) {
        if (r < rotation_columns) append_rotation_column(seq);
        if (r < entangler_blocks) append_entangler(seq, spec.family);
    }
    return seq;
}

Circuit bind(const GateSequence& seq, std::span<const double> theta) {
    check_theta(seq, theta);
    Circuit c = seq.gates;
    for (std::size_t i = 0; i < theta.size(); ++i) set_angle(c[seq.slots[i]], theta[i]);
    return c;
}

StateVector state(const GateSequence& seq, std::span<const double> theta) {
    return apply_circuit(StateVector(seq.n_qubits), bind(seq, theta));
}

StateVector state(const AnsatzSpec& spec, std::span<const double> theta) {
    return state(build(spec), theta);
}

std::vector<DerivativeTerm> derivative_expansion(const GateSequence& seq, std::size_t param) {
    if (param >= seq.param_count()) throw InvalidArgument("parameter index out of range");
    const Gate& g = seq.gates[seq.slots[param]];
    const int n = seq.n_qubits;
    if (const auto* r = std::get_if<gate::RY>(&g.kind)) {
        return {{Complex{0.0, -0.5}, PauliString::single(n, r->target, 'Y')}};
    }
    if (const auto* cr = std::get_if<gate::CRY>(&g.kind)) {
        // |1><1| = (I - Z)/2 on the control.
        const PauliString iy = PauliString::single(n, cr->target, 'Y');
        const PauliString zy(n, iy.x_mask(), iy.z_mask() | (std::uint64_t{1} << cr->control));
        return {{Complex{0.0, -0.25}, iy}, {Complex{0.0, 0.25}, zy}};
    }
    throw InvalidGate("parameter slot does not hold a rotation gate");
}

StateVector derivative_branch(const GateSequence& seq, std::span<const double> theta,
                              std::size_t param, std::size_t term) {
    const Circuit c = bind(seq, theta);
    const auto terms = derivative_expansion(seq, param);
    if (term >= terms.size()) throw InvalidArgument("derivative term index out of range");
    StateVector s(seq.n_qubits);
    const std::size_t at = seq.slots[param];
    for (std::size_t g = 0; g < c.size(); ++g) {
        if (g == at) apply_pauli_inplace(s.amplitudes(), terms[term].sigma);
        apply_gate_inplace(s, c[g]);
    }
    return s;
}

std::vector<StateVector> jacobian_states(const GateSequence& seq, std::span<const double> theta) {
    const Circuit c = bind(seq, theta);
    const auto dim = std::size_t{1} << seq.n_qubits;
    std::vector<StateVector> columns;
    columns.reserve(seq.param_count());

    StateVector prefix(seq.n_qubits);
    std::size_t next_param = 0;
    for (std::size_t g = 0; g < c.size(); ++g) {
        if (next_param < seq.param_count() && seq.slots[next_param] == g) {
            std::vector<Complex> column(dim);
            for (const auto& term : derivative_expansion(seq, next_param)) {
                StateVector branch = prefix;
                apply_pauli_inplace(branch.amplitudes(), term.sigma);
                for (std::size_t h = g; h < c.size(); ++h) apply_gate_inplace(branch, c[h]);
                for (std::size_t k = 0; k < dim; ++k) column[k] += term.coefficient * branch[k];
            }
            columns.emplace_back(std::move(column));
            ++next_param;
        }
        apply_gate_inplace(prefix, c[g]);
    }
    return columns;
}

int logical_depth(const GateSequence& seq) {
    std::vector<int> frontier(static_cast<std::size_t>(seq.n_qubits), 0);
    int depth = 0;
    for (const auto& g : seq.gates) {
        const auto qs = g.qubits();
        int level = 0;
        for (int q : qs) level = std::max(level, frontier[static_cast<std::size_t>(q)]);
        ++level;
        for (int q : qs) frontier[static_cast<std::size_t>(q)] = level;
        depth = std::max(depth, level);
    }
    return depth;
}

int logical_depth(const AnsatzSpec& spec) { return logical_depth(build(spec)); }

}  // namespace qmaxwell::ansatz
