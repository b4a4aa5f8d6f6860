#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qmaxwell/pauli.hpp"
#include "qmaxwell/state_vector.hpp"

namespace qmaxwell::pauli_decomp {

inline constexpr double kDefaultPruneThreshold = 1e-12;

/// Weighted sum of Pauli words on a fixed register width. Words are unique
/// and kept in (x_mask, z_mask) order.
struct PauliSum {
    int n_qubits = 0;
    std::vector<PauliTerm> terms;

    /// Merges duplicate words and drops terms with |c| < threshold.
    void canonicalize(double prune_threshold = kDefaultPruneThreshold);
};

/// c_P = Tr(P M) / 2^n for every Pauli word P. Uses a Walsh-Hadamard transform
/// along each X-mask diagonal, O(4^n n).
PauliSum decompose(const Eigen::MatrixXcd& matrix,
                   double prune_threshold = kDefaultPruneThreshold);
PauliSum decompose(const Eigen::MatrixXd& matrix,
                   double prune_threshold = kDefaultPruneThreshold);

/// Dense sum of c_P P.
Eigen::MatrixXcd reconstruct(const PauliSum& sum);

/// (sum c_P P) |state>, without materializing the matrix.
std::vector<Complex> matvec(const PauliSum& sum, std::span<const Complex> state);
std::vector<Complex> matvec(const PauliSum& sum, const StateVector& state);

}  // namespace qmaxwell::pauli_decomp
