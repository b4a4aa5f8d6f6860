#include "qmaxwell/pauli_decomp.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <utility>

#include "qmaxwell/errors.hpp"

namespace qmaxwell::pauli_decomp {

namespace {

Complex i_power(int k) {
    switch (k & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// In-place unnormalized Walsh-Hadamard transform.
void walsh_hadamard(std::vector<Complex>& v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const Complex a = v[j];
                const Complex b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

}  // namespace

void PauliSum::canonicalize(double prune_threshold) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, Complex> merged;
    for (const auto& t : terms) {
        if (t.word.n_qubits() != n_qubits) {
            throw DimensionMismatch("term " + t.word.to_string() + " does not span " +
                                    std::to_string(n_qubits) + " qubits");
        }
        merged[{t.word.x_mask(), t.word.z_mask()}] += t.coefficient;
    }
    terms.clear();
    for (const auto& [key, c] : merged) {
        if (std::abs(c) < prune_threshold) continue;
        terms.push_back({c, PauliString(n_qubits, key.first, key.second)});
    }
}

PauliSum decompose(const Eigen::MatrixXcd& matrix, double prune_threshold) {
    if (matrix.rows() != matrix.cols()) throw DimensionMismatch("matrix is not square");
    const auto dim = static_cast<std::size_t>(matrix.rows());
    const int n = qubits_for_dimension(dim);
    const double scale = 1.0 / static_cast<double>(dim);

    PauliSum out{n, {}};
    std::vector<Complex> diag(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        for (std::uint64_t k = 0; k < dim; ++k) {
            diag[k] = matrix(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k ^ x));
        }
        walsh_hadamard(diag);
        for (std::uint64_t z = 0; z < dim; ++z) {
            const Complex c = i_power(std::popcount(x & z)) * diag[z] * scale;
            if (std::abs(c) < prune_threshold) continue;
            out.terms.push_back({c, PauliString(n, x, z)});
        }
    }
    return out;
}

PauliSum decompose(const Eigen::MatrixXd& matrix, double prune_threshold) {
    return decompose(Eigen::MatrixXcd(matrix.cast<Complex>()), prune_threshold);
}

Eigen::MatrixXcd reconstruct(const PauliSum& sum) {
    const auto dim = std::uint64_t{1} << sum.n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const auto& t : sum.terms) {
        for (std::uint64_t col = 0; col < dim; ++col) {
            const std::uint64_t row = col ^ t.word.x_mask();
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
                t.coefficient * t.word.element(row, col);
        }
    }
    return m;
}

std::vector<Complex> matvec(const PauliSum& sum, std::span<const Complex> state) {
    const auto dim = std::uint64_t{1} << sum.n_qubits;
    if (state.size() != dim) {
        throw DimensionMismatch("Pauli sum on " + std::to_string(sum.n_qubits) +
                                " qubits applied to vector of length " +
                                std::to_string(state.size()));
    }
    std::vector<Complex> out(dim);
    for (const auto& t : sum.terms) {
        const Complex base = t.coefficient * i_power(t.word.y_count());
        for (std::uint64_t col = 0; col < dim; ++col) {
            const Complex f = (std::popcount(col & t.word.z_mask()) & 1) ? -base : base;
            out[col ^ t.word.x_mask()] += f * state[col];
        }
    }
    return out;
}

std::vector<Complex> matvec(const PauliSum& sum, const StateVector& state) {
    return matvec(sum, state.amplitudes());
}

}  // namespace qmaxwell::pauli_decomp
