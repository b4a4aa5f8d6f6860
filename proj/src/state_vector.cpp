#include "qmaxwell/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qmaxwell/errors.hpp"

namespace qmaxwell {

int qubits_for_dimension(std::size_t dimension) {
    if (dimension == 0 || !std::has_single_bit(dimension)) {
        throw DimensionMismatch("dimension " + std::to_string(dimension) +
                                " is not a power of two");
    }
    return std::countr_zero(dimension);
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 0 || n_qubits > 30) {
        throw InvalidArgument("unsupported qubit count " + std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::vector<Complex> amplitudes)
    : n_qubits_(qubits_for_dimension(amplitudes.size())), amps_(std::move(amplitudes)) {}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    if (index >= s.dimension()) {
        throw InvalidArgument("basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_real(std::span<const double> values) {
    std::vector<Complex> amps(values.begin(), values.end());
    return StateVector(std::move(amps));
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
}

StateVector& StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) throw InvalidArgument("cannot normalize a zero vector");
    for (auto& a : amps_) a /= n;
    return *this;
}

double StateVector::max_imag() const {
    double m = 0.0;
    for (const auto& a : amps_) m = std::max(m, std::abs(a.imag()));
    return m;
}

std::vector<double> StateVector::real_part() const {
    std::vector<double> out(amps_.size());
    std::transform(amps_.begin(), amps_.end(), out.begin(),
                   [](const Complex& a) { return a.real(); });
    return out;
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("inner product of vectors of length " +
                                std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
    Complex sum{};
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
    return sum;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    return inner_product(a.amplitudes(), b.amplitudes());
}

}  // namespace qmaxwell
