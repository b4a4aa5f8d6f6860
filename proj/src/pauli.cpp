#include "qmaxwell/pauli.hpp"

#include <bit>

#include "qmaxwell/errors.hpp"

namespace qmaxwell {

namespace {

// i^k for k mod 4.
Complex i_power(int k) {
    switch (k & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_(n_qubits), x_(x_mask), z_(z_mask) {
    if (n_qubits < 0 || n_qubits > 62) throw InvalidArgument("unsupported Pauli width");
    const std::uint64_t full = (std::uint64_t{1} << n_qubits) - 1;
    if ((x_mask | z_mask) & ~full) throw InvalidArgument("Pauli mask exceeds word length");
}

PauliString PauliString::parse(std::string_view word) {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (std::size_t p = 0; p < word.size(); ++p) {
        const std::uint64_t bit = std::uint64_t{1} << p;
        switch (word[p]) {
            case 'I': break;
            case 'X': x |= bit; break;
            case 'Y': x |= bit; z |= bit; break;
            case 'Z': z |= bit; break;
            default:
                throw ParseError("invalid Pauli letter '" + std::string(1, word[p]) +
                                 "' at position " + std::to_string(p) + " of \"" +
                                 std::string(word) + "\"");
        }
    }
    return PauliString(static_cast<int>(word.size()), x, z);
}

PauliString PauliString::identity(int n_qubits) { return PauliString(n_qubits, 0, 0); }

PauliString PauliString::single(int n_qubits, int qubit, char op) {
    if (qubit < 0 || qubit >= n_qubits) throw InvalidGate("Pauli qubit out of range");
    std::string word(static_cast<std::size_t>(n_qubits), 'I');
    word[static_cast<std::size_t>(qubit)] = op;
    return parse(word);
}

int PauliString::y_count() const { return std::popcount(x_ & z_); }

char PauliString::letter(int qubit) const {
    const bool x = (x_ >> qubit) & 1U;
    const bool z = (z_ >> qubit) & 1U;
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

std::string PauliString::to_string() const {
    std::string s(static_cast<std::size_t>(n_), 'I');
    for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
    return s;
}

Complex PauliString::element(std::uint64_t row, std::uint64_t col) const {
    if (row != (col ^ x_)) return {};
    const int sign = std::popcount(col & z_) & 1;
    return (sign ? -1.0 : 1.0) * i_power(y_count());
}

void apply_pauli_inplace(std::span<Complex> amps, const PauliString& word,
                         std::uint64_t control_mask) {
    const std::uint64_t x = word.x_mask();
    const std::uint64_t z = word.z_mask();
    const Complex phase = i_power(word.y_count());
    const std::uint64_t dim = amps.size();
    // Z part first, then the X permutation (Y = i X Z).
    for (std::uint64_t j = 0; j < dim; ++j) {
        if ((j & control_mask) != control_mask) continue;
        Complex f = phase;
        if (std::popcount(j & z) & 1) f = -f;
        amps[j] *= f;
    }
    if (x == 0) return;
    for (std::uint64_t j = 0; j < dim; ++j) {
        if ((j & control_mask) != control_mask) continue;
        const std::uint64_t k = j ^ x;
        if (j < k) std::swap(amps[j], amps[k]);
    }
}

StateVector apply_pauli_word(StateVector state, const PauliString& word) {
    if (word.n_qubits() != state.n_qubits()) {
        throw DimensionMismatch("Pauli word of length " + std::to_string(word.n_qubits()) +
                                " applied to " + std::to_string(state.n_qubits()) + " qubits");
    }
    apply_pauli_inplace(state.amplitudes(), word);
    return state;
}

StateVector apply_pauli_word(StateVector state, std::string_view word) {
    return apply_pauli_word(std::move(state), PauliString::parse(word));
}

}  // namespace qmaxwell
