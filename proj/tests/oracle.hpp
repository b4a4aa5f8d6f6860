// Dense brute-force reference implementations for small qubit counts.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qmaxwell/ansatz.hpp"
#include "qmaxwell/gates.hpp"
#include "qmaxwell/state_vector.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline Eigen::Matrix2cd pauli_matrix(char p) {
    Eigen::Matrix2cd m;
    const Complex i(0, 1);
    switch (p) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -i, i, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m << 1, 0, 0, 1; break;
    }
    return m;
}

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

/// Full matrix of single-qubit operators ops[q] on qubit q (qubit 0 least
/// significant): ops[n-1] (x) ... (x) ops[0].
inline MatrixXcd tensor(const std::vector<Eigen::Matrix2cd>& ops) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (std::size_t q = 0; q < ops.size(); ++q) out = kron(ops[q], out);
    return out;
}

/// Word character p acts on qubit p.
inline MatrixXcd pauli_word(const std::string& word) {
    std::vector<Eigen::Matrix2cd> ops;
    for (char c : word) ops.push_back(pauli_matrix(c));
    return tensor(ops);
}

inline Eigen::Matrix2cd ry_matrix(double theta) {
    Eigen::Matrix2cd m;
    m << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
    return m;
}

inline Eigen::Matrix2cd hadamard_matrix() {
    Eigen::Matrix2cd m;
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

inline Eigen::Matrix2cd phase_matrix(double a) {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, std::exp(Complex(0, a));
    return m;
}

inline Eigen::Matrix2cd sdg_h_matrix() {
    Eigen::Matrix2cd sdg;
    sdg << 1, 0, 0, Complex(0, -1);
    return hadamard_matrix() * sdg;
}

inline MatrixXcd single(int n, int q, const Eigen::Matrix2cd& m) {
    std::vector<Eigen::Matrix2cd> ops(n, Eigen::Matrix2cd::Identity());
    ops[q] = m;
    return tensor(ops);
}

/// |0><0|_c (x) I + |1><1|_c (x) U_t.
inline MatrixXcd controlled(int n, int c, int t, const Eigen::Matrix2cd& u) {
    Eigen::Matrix2cd p0, p1;
    p0 << 1, 0, 0, 0;
    p1 << 0, 0, 0, 1;
    std::vector<Eigen::Matrix2cd> a(n, Eigen::Matrix2cd::Identity());
    std::vector<Eigen::Matrix2cd> b(n, Eigen::Matrix2cd::Identity());
    a[c] = p0;
    b[c] = p1;
    b[t] = u;
    return tensor(a) + tensor(b);
}

/// Dense matrix of one gate on n qubits, including an ancilla control.
inline MatrixXcd gate_matrix(const qmaxwell::Gate& g, int n) {
    using namespace qmaxwell;
    MatrixXcd m = std::visit(
        [&](const auto& k) -> MatrixXcd {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, gate::RY>) return single(n, k.target, ry_matrix(k.angle));
            if constexpr (std::is_same_v<T, gate::CRY>) {
                return controlled(n, k.control, k.target, ry_matrix(k.angle));
            }
            if constexpr (std::is_same_v<T, gate::CNOT>) {
                return controlled(n, k.control, k.target, pauli_matrix('X'));
            }
            if constexpr (std::is_same_v<T, gate::Pauli>) return pauli_word(k.word.to_string());
            if constexpr (std::is_same_v<T, gate::Phase>) return single(n, k.target, phase_matrix(k.angle));
            if constexpr (std::is_same_v<T, gate::Hadamard>) return single(n, k.target, hadamard_matrix());
            if constexpr (std::is_same_v<T, gate::SdgH>) return single(n, k.target, sdg_h_matrix());
        },
        g.kind);
    if (g.ancilla_control) {
        const int a = *g.ancilla_control;
        Eigen::Matrix2cd p0, p1;
        p0 << 1, 0, 0, 0;
        p1 << 0, 0, 0, 1;
        m = single(n, a, p0) + single(n, a, p1) * m;
    }
    return m;
}

inline MatrixXcd circuit_matrix(const qmaxwell::Circuit& c, int n) {
    MatrixXcd u = MatrixXcd::Identity(1 << n, 1 << n);
    for (const auto& g : c) u = gate_matrix(g, n) * u;
    return u;
}

inline VectorXcd to_eigen(const qmaxwell::StateVector& s) {
    VectorXcd v(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t k = 0; k < s.dimension(); ++k) v[static_cast<Eigen::Index>(k)] = s[k];
    return v;
}

inline VectorXcd zero_state(int n) {
    VectorXcd v = VectorXcd::Zero(1 << n);
    v[0] = 1.0;
    return v;
}

inline qmaxwell::StateVector random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> a(std::size_t{1} << n);
    for (auto& x : a) x = Complex(g(rng), g(rng));
    qmaxwell::StateVector s(std::move(a));
    s.normalize();
    return s;
}

inline std::vector<double> random_theta(std::size_t d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    std::vector<double> t(d);
    for (auto& x : t) x = u(rng);
    return t;
}

/// dU/dtheta_i by differentiating the dense gate matrix analytically.
inline VectorXcd dense_derivative(const qmaxwell::ansatz::GateSequence& seq,
                                  const std::vector<double>& theta, std::size_t param) {
    using namespace qmaxwell;
    const int n = seq.n_qubits;
    const Circuit bound = ansatz::bind(seq, theta);
    MatrixXcd u = MatrixXcd::Identity(1 << n, 1 << n);
    for (std::size_t g = 0; g < bound.size(); ++g) {
        MatrixXcd m;
        if (g == seq.slots[param]) {
            // d/dtheta R_Y(theta) = 1/2 [[-sin, -cos], [cos, -sin]](theta/2).
            Eigen::Matrix2cd dry;
            if (const auto* r = std::get_if<gate::RY>(&bound[g].kind)) {
                const double h = r->angle / 2;
                dry << -std::sin(h) / 2, -std::cos(h) / 2, std::cos(h) / 2, -std::sin(h) / 2;
                m = single(n, r->target, dry);
            } else {
                const auto& c = std::get<gate::CRY>(bound[g].kind);
                const double h = c.angle / 2;
                dry << -std::sin(h) / 2, -std::cos(h) / 2, std::cos(h) / 2, -std::sin(h) / 2;
                Eigen::Matrix2cd p1;
                p1 << 0, 0, 0, 1;
                std::vector<Eigen::Matrix2cd> ops(n, Eigen::Matrix2cd::Identity());
                ops[c.control] = p1;
                ops[c.target] = dry;
                m = tensor(ops);
            }
        } else {
            m = gate_matrix(bound[g], n);
        }
        u = m * u;
    }
    return u * zero_state(n);
}

}  // namespace oracle
