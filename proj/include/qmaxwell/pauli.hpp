#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "qmaxwell/state_vector.hpp"

namespace qmaxwell {

/// Tensor product of {I, X, Y, Z}. Character p of the textual word acts on
/// qubit p, so "IIYI" places Y on qubit 2. Internally stored as X/Z bit masks
/// with Y = i*X*Z.
class PauliString {
public:
    PauliString() = default;
    PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

    /// Parses a word over {I,X,Y,Z}; throws ParseError on any other character.
    static PauliString parse(std::string_view word);
    /// Identity on n qubits.
    static PauliString identity(int n_qubits);
    /// Single letter `op` on `qubit`, identity elsewhere.
    static PauliString single(int n_qubits, int qubit, char op);

    int n_qubits() const { return n_; }
    std::uint64_t x_mask() const { return x_; }
    std::uint64_t z_mask() const { return z_; }
    int y_count() const;
    char letter(int qubit) const;
    std::string to_string() const;

    /// Matrix element <row|P|col>.
    Complex element(std::uint64_t row, std::uint64_t col) const;

    friend bool operator==(const PauliString&, const PauliString&) = default;
    friend auto operator<=>(const PauliString&, const PauliString&) = default;

private:
    int n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
};

struct PauliTerm {
    Complex coefficient{1.0, 0.0};
    PauliString word;
};

/// Applies the Pauli unitary in place, optionally only on the subspace where
/// every bit of `control_mask` is set.
void apply_pauli_inplace(std::span<Complex> amps, const PauliString& word,
                         std::uint64_t control_mask = 0);

/// P|state>; the word must have the state's qubit count.
StateVector apply_pauli_word(StateVector state, const PauliString& word);
StateVector apply_pauli_word(StateVector state, std::string_view word);

}  // namespace qmaxwell
