#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qmaxwell/pauli_decomp.hpp"

namespace qmaxwell::fdtd {

enum class Boundary { periodic, dirichlet_zero };

Boundary parse_boundary(const std::string& text);
std::string to_string(Boundary b);

/// Uniform 1D grid x_i = i*dx, i = 0..n_grid-1, with dx = domain_length/n_grid.
struct MaxwellConfig {
    int n_grid = 16;
    double domain_length = 1.0;
    double dt = 0.1 / 16.0;
    double c = 1.0;
    Boundary boundary = Boundary::periodic;

    double dx() const { return domain_length / n_grid; }
    double courant() const { return c * dt / dx(); }

    /// dt defaults to 0.1*dx/c.
    static MaxwellConfig with_defaults(int n_grid, double domain_length = 1.0, double c = 1.0);

    /// Throws InvalidArgument on hard violations; returns soft warnings
    /// (Courant number above 0.5).
    std::vector<std::string> validate() const;
};

/// The four transverse field components kept in the reduced 1D system.
struct FieldState {
    Eigen::VectorXd by, bz, ey, ez;

    static FieldState zeros(int n_grid);
    int n_grid() const { return static_cast<int>(bz.size()); }

    friend bool operator==(const FieldState& a, const FieldState& b) {
        return a.by == b.by && a.bz == b.bz && a.ey == b.ey && a.ez == b.ez;
    }
};

/// Field-major ("block") layout: index = field*n_grid + node, fields ordered
/// (B_y, B_z, E_y, E_z). The two most significant qubits address the field.
inline constexpr int kFieldCount = 4;
inline constexpr const char* kFieldNames[kFieldCount] = {"by", "bz", "ey", "ez"};

Eigen::VectorXd flatten(const FieldState& s);
FieldState unflatten(const Eigen::VectorXd& u, int n_grid);
int field_index(const std::string& name);

/// Semi-discrete generator with du/dt = G u.
struct Generator {
    int dimension = 0;
    Eigen::SparseMatrix<double> matrix;
    pauli_decomp::PauliSum pauli_form;
};

/// dF/dU for U = (B_y, B_z, E_y, E_z), F = (-E_z, E_y, c^2 B_z, -c^2 B_y).
Eigen::Matrix4d jacobian(double c);

/// Integer +-1 central stencil: (D u)_i = u_{i+1} - u_{i-1}.
Eigen::SparseMatrix<double> unit_stencil(int n_grid, Boundary boundary);

/// Central difference (u_{i+1} - u_{i-1}) / (2 dx), wrapping (periodic) or with
/// zero ghost values (dirichlet_zero).
Eigen::SparseMatrix<double> shift_operator(int n_grid, double dx, Boundary boundary);

/// G = -(A (x) D_unit) / (2 dx) in field-major layout, plus its Pauli form.
Generator assemble_generator(const MaxwellConfig& config);

/// Forward Euler: u + dt G u.
Eigen::VectorXd classical_step(const Eigen::VectorXd& u, const Eigen::SparseMatrix<double>& g,
                               double dt);

struct Snapshot {
    double time = 0.0;
    FieldState fields;
};

/// Forward-Euler trajectory sampled at every step; round(t_final/dt) steps.
std::vector<Snapshot> classical_solve(const MaxwellConfig& config, const FieldState& initial,
                                      double t_final);

/// B_z = exp(-(x - center)^2 / (2 width^2)); all other fields zero.
FieldState gaussian_initial(const MaxwellConfig& config, double center, double width);

/// Default pulse parameters relative to the domain length.
inline constexpr double kDefaultCenterFraction = 0.5;
inline constexpr double kDefaultWidthFraction = 0.08;

/// Number of steps of size dt needed to reach t_final; throws if t_final < 0.
int step_count(double t_final, double dt);

}  // namespace qmaxwell::fdtd
