#include "qmaxwell/mclachlan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include "qmaxwell/errors.hpp"

namespace qmaxwell::mclachlan {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t circuit_key(std::uint64_t tag, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                          std::uint64_t d) {
    std::uint64_t h = splitmix64(tag);
    for (std::uint64_t v : {a, b, c, d}) h = splitmix64(h ^ v);
    return h;
}

constexpr std::uint64_t kLambdaTag = 0x4c414d424441ULL;
constexpr std::uint64_t kCTag = 0x43564543ULL;

// Re-expresses a system gate on a register one qubit wider.
Gate widen(const Gate& g, int width) {
    Gate out = g;
    if (auto* p = std::get_if<gate::Pauli>(&out.kind)) {
        p->word = PauliString(width, p->word.x_mask(), p->word.z_mask());
    }
    return out;
}

PauliString widen(const PauliString& w, int width) {
    return PauliString(width, w.x_mask(), w.z_mask());
}

void apply_on_ancilla_zero(StateVector& s, const PauliString& sigma, int ancilla) {
    const int width = s.n_qubits();
    apply_gate_inplace(s, pauli_x(width, ancilla));
    apply_pauli_inplace(s.amplitudes(), widen(sigma, width), std::uint64_t{1} << ancilla);
    apply_gate_inplace(s, pauli_x(width, ancilla));
}

void apply_on_ancilla_one(StateVector& s, const PauliString& sigma, int ancilla) {
    apply_pauli_inplace(s.amplitudes(), widen(sigma, s.n_qubits()), std::uint64_t{1} << ancilla);
}

// Closes the interferometer and converts the ancilla statistics to an estimate
// of Re(e^{i phase} <branch0|branch1>).
double measure_ancilla(StateVector& s, int ancilla, const EvaluationMode& mode,
                       std::uint64_t circuit_id) {
    apply_gate_inplace(s, hadamard(ancilla));
    const std::uint64_t mask = std::uint64_t{1} << ancilla;
    double p0 = 0.0;
    const auto amps = s.amplitudes();
    for (std::uint64_t j = 0; j < amps.size(); ++j) {
        if (!(j & mask)) p0 += std::norm(amps[j]);
    }
    p0 = std::clamp(p0, 0.0, 1.0);
    if (const auto* shots = std::get_if<Shots>(&mode)) {
        std::mt19937_64 rng(splitmix64(shots->seed ^ splitmix64(circuit_id)));
        std::binomial_distribution<std::uint64_t> draw(shots->shots, p0);
        const double zeros = static_cast<double>(draw(rng));
        return 2.0 * zeros / static_cast<double>(shots->shots) - 1.0;
    }
    return 2.0 * p0 - 1.0;
}

void validate_mode(const EvaluationMode& mode) {
    if (const auto* s = std::get_if<Shots>(&mode); s && s->shots == 0) {
        throw InvalidArgument("shot count must be at least 1");
    }
}

StateVector ancilla_register(int n_qubits, double phase_angle) {
    StateVector s(n_qubits + 1);
    apply_gate_inplace(s, hadamard(n_qubits));
    apply_gate_inplace(s, phase(phase_angle, n_qubits));
    return s;
}

}  // namespace

EvaluationMode parse_mode(const std::string& text, std::uint64_t seed) {
    if (text == "exact") return Exact{};
    const std::string prefix = "shots:";
    if (text.rfind(prefix, 0) == 0) {
        std::uint64_t m = 0;
        const char* first = text.data() + prefix.size();
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, m);
        if (ec != std::errc{} || ptr != last || m == 0) {
            throw ParseError("invalid shot count in mode '" + text + "'");
        }
        return Shots{m, seed};
    }
    throw ParseError("unknown mode '" + text + "' (expected exact|shots:M)");
}

std::string to_string(const EvaluationMode& mode) {
    if (const auto* s = std::get_if<Shots>(&mode)) return "shots:" + std::to_string(s->shots);
    return "exact";
}

bool is_exact(const EvaluationMode& mode) { return std::holds_alternative<Exact>(mode); }

EvaluationMode reseeded(const EvaluationMode& mode, std::uint64_t seed) {
    if (const auto* s = std::get_if<Shots>(&mode)) return Shots{s->shots, seed};
    return mode;
}

double hadamard_test(int n_qubits, const Circuit& prefix, const Circuit& a, const Circuit& b,
                     double phase_angle, const EvaluationMode& mode, std::uint64_t circuit_id) {
    validate_mode(mode);
    const int width = n_qubits + 1;
    const int ancilla = n_qubits;
    StateVector s = ancilla_register(n_qubits, phase_angle);
    for (const auto& g : prefix) apply_gate_inplace(s, widen(g, width));
    apply_gate_inplace(s, pauli_x(width, ancilla));
    for (const auto& g : a) apply_gate_inplace(s, controlled_on(widen(g, width), ancilla));
    apply_gate_inplace(s, pauli_x(width, ancilla));
    for (const auto& g : b) apply_gate_inplace(s, controlled_on(widen(g, width), ancilla));
    return measure_ancilla(s, ancilla, mode, circuit_id);
}

ExpandedCounts expanded_counts(const ansatz::GateSequence& seq, std::size_t generator_terms) {
    std::uint64_t k_total = 0;
    for (std::size_t i = 0; i < seq.param_count(); ++i) {
        k_total += ansatz::derivative_expansion(seq, i).size();
    }
    return {k_total * k_total, k_total * generator_terms};
}

namespace {

// Re(e^{i gamma} <V_{k,i} 0 | V_{l,j} 0>) via the ancilla interferometer; gates
// after the later insertion point act identically on both branches and are
// dropped.
double lambda_overlap(const ansatz::GateSequence& seq, const Circuit& bound, std::size_t i,
                      const PauliString& sigma_i, std::size_t j, const PauliString& sigma_j,
                      double gamma, const EvaluationMode& mode, std::uint64_t circuit_id) {
    const int n = seq.n_qubits;
    const int width = n + 1;
    const std::size_t gi = seq.slots[i];
    const std::size_t gj = seq.slots[j];
    StateVector s = ancilla_register(n, gamma);
    for (std::size_t g = 0; g <= std::max(gi, gj); ++g) {
        if (g == gi) apply_on_ancilla_zero(s, sigma_i, n);
        if (g == gj) apply_on_ancilla_one(s, sigma_j, n);
        apply_gate_inplace(s, widen(bound[g], width));
    }
    return measure_ancilla(s, n, mode, circuit_id);
}

// Re(e^{i gamma} <V_{k,i} 0 | P_l U 0>).
double c_overlap(const ansatz::GateSequence& seq, const Circuit& bound, std::size_t i,
                 const PauliString& sigma_i, const PauliString& term, double gamma,
                 const EvaluationMode& mode, std::uint64_t circuit_id) {
    const int n = seq.n_qubits;
    const int width = n + 1;
    const std::size_t gi = seq.slots[i];
    StateVector s = ancilla_register(n, gamma);
    for (std::size_t g = 0; g < bound.size(); ++g) {
        if (g == gi) apply_on_ancilla_zero(s, sigma_i, n);
        apply_gate_inplace(s, widen(bound[g], width));
    }
    apply_on_ancilla_one(s, term, n);
    return measure_ancilla(s, n, mode, circuit_id);
}

Eigen::MatrixXd exact_lambda(const std::vector<StateVector>& cols, const StateVector& phi,
                             const Options& options) {
    const auto d = static_cast<Eigen::Index>(cols.size());
    Eigen::MatrixXd lambda(d, d);
    std::vector<Complex> berry(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) berry[i] = inner_product(cols[i], phi);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i; j < d; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            double v = inner_product(cols[ui], cols[uj]).real();
            if (options.phase_correction) v -= (berry[ui] * std::conj(berry[uj])).real();
            lambda(i, j) = v;
            lambda(j, i) = v;
        }
    }
    return lambda;
}

Eigen::VectorXd exact_c(const std::vector<StateVector>& cols, const StateVector& phi,
                        const pauli_decomp::PauliSum& generator, const Options& options) {
    const auto g_phi = pauli_decomp::matvec(generator, phi);
    const Complex energy = inner_product(phi.amplitudes(), g_phi);
    Eigen::VectorXd c(static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) {
        double v = inner_product(cols[i].amplitudes(), g_phi).real();
        if (options.phase_correction) v -= (inner_product(cols[i], phi) * energy).real();
        c(static_cast<Eigen::Index>(i)) = v;
    }
    return c;
}

void check_generator(const ansatz::GateSequence& seq, const pauli_decomp::PauliSum& generator) {
    if (generator.n_qubits != seq.n_qubits) {
        throw DimensionMismatch("generator acts on " + std::to_string(generator.n_qubits) +
                                " qubits, ansatz on " + std::to_string(seq.n_qubits));
    }
}

}  // namespace

Eigen::MatrixXd lambda_matrix(const ansatz::GateSequence& seq, std::span<const double> theta,
                              const EvaluationMode& mode, CircuitTally* tally,
                              const Options& options) {
    validate_mode(mode);
    if (is_exact(mode)) {
        const auto cols = ansatz::jacobian_states(seq, theta);
        return exact_lambda(cols, ansatz::state(seq, theta), options);
    }
    const Circuit bound = ansatz::bind(seq, theta);
    const std::size_t d = seq.param_count();
    std::vector<std::vector<ansatz::DerivativeTerm>> expansions(d);
    for (std::size_t i = 0; i < d; ++i) expansions[i] = ansatz::derivative_expansion(seq, i);
    const auto shots = std::get<Shots>(mode).shots;

    Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < expansions[i].size(); ++k) {
                for (std::size_t l = 0; l < expansions[j].size(); ++l) {
                    const Complex w =
                        std::conj(expansions[i][k].coefficient) * expansions[j][l].coefficient;
                    const double est = lambda_overlap(
                        seq, bound, i, expansions[i][k].sigma, j, expansions[j][l].sigma,
                        std::arg(w), mode, circuit_key(kLambdaTag, i, j, k, l));
                    sum += std::abs(w) * est;
                    if (tally) {
                        ++tally->lambda_circuits;
                        tally->shots += shots;
                    }
                }
            }
            raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
        }
    }
    return 0.5 * (raw + raw.transpose());
}

Eigen::VectorXd c_vector(const ansatz::GateSequence& seq, std::span<const double> theta,
                         const pauli_decomp::PauliSum& generator, const EvaluationMode& mode,
                         CircuitTally* tally, const Options& options) {
    validate_mode(mode);
    check_generator(seq, generator);
    if (is_exact(mode)) {
        const auto cols = ansatz::jacobian_states(seq, theta);
        return exact_c(cols, ansatz::state(seq, theta), generator, options);
    }
    const Circuit bound = ansatz::bind(seq, theta);
    const std::size_t d = seq.param_count();
    const auto shots = std::get<Shots>(mode).shots;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        const auto expansion = ansatz::derivative_expansion(seq, i);
        double sum = 0.0;
        for (std::size_t k = 0; k < expansion.size(); ++k) {
            for (std::size_t l = 0; l < generator.terms.size(); ++l) {
                const Complex w =
                    std::conj(expansion[k].coefficient) * generator.terms[l].coefficient;
                const double est =
                    c_overlap(seq, bound, i, expansion[k].sigma, generator.terms[l].word,
                              std::arg(w), mode, circuit_key(kCTag, i, k, l, 0));
                sum += std::abs(w) * est;
                if (tally) {
                    ++tally->c_circuits;
                    tally->shots += shots;
                }
            }
        }
        c(static_cast<Eigen::Index>(i)) = sum;
    }
    return c;
}

McLachlanSystem evaluate(const ansatz::GateSequence& seq, std::span<const double> theta,
                         const pauli_decomp::PauliSum& generator, const EvaluationMode& mode,
                         CircuitTally* tally, const Options& options) {
    check_generator(seq, generator);
    if (is_exact(mode)) {
        const auto cols = ansatz::jacobian_states(seq, theta);
        const StateVector phi = ansatz::state(seq, theta);
        return {exact_lambda(cols, phi, options), exact_c(cols, phi, generator, options), mode};
    }
    return {lambda_matrix(seq, theta, mode, tally, options),
            c_vector(seq, theta, generator, mode, tally, options), mode};
}

}  // namespace qmaxwell::mclachlan
