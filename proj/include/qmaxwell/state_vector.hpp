#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qmaxwell {

using Complex = std::complex<double>;

/// Dense n-qubit statevector. Qubit 0 is the least significant bit of the
/// amplitude index.
class StateVector {
public:
    StateVector() = default;

    /// |0...0> on n qubits.
    explicit StateVector(int n_qubits);

    /// Takes ownership of amplitudes; length must be a power of two.
    explicit StateVector(std::vector<Complex> amplitudes);

    static StateVector basis(int n_qubits, std::size_t index);
    static StateVector from_real(std::span<const double> values);

    int n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amps_.size(); }

    Complex operator[](std::size_t i) const { return amps_[i]; }
    Complex& operator[](std::size_t i) { return amps_[i]; }

    std::span<const Complex> amplitudes() const { return amps_; }
    std::span<Complex> amplitudes() { return amps_; }

    double norm() const;
    /// Scales to unit norm; throws InvalidArgument on a zero vector.
    StateVector& normalize();

    /// Largest |Im a_k|, used for real-closure checks.
    double max_imag() const;
    std::vector<double> real_part() const;

    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    int n_qubits_ = 0;
    std::vector<Complex> amps_;
};

/// <a|b>, conjugate-linear in a.
Complex inner_product(const StateVector& a, const StateVector& b);
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);

/// Number of qubits addressing `dimension` amplitudes; throws unless a power of two.
int qubits_for_dimension(std::size_t dimension);

}  // namespace qmaxwell
