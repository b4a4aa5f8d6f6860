#include "qmaxwell/maxwell.hpp"

#include <bit>
#include <cmath>

#include "qmaxwell/errors.hpp"

namespace qmaxwell::fdtd {

Boundary parse_boundary(const std::string& text) {
    if (text == "periodic") return Boundary::periodic;
    if (text == "dirichlet_zero") return Boundary::dirichlet_zero;
    throw ParseError("unknown boundary '" + text + "' (expected periodic|dirichlet_zero)");
}

std::string to_string(Boundary b) {
    return b == Boundary::periodic ? "periodic" : "dirichlet_zero";
}

MaxwellConfig MaxwellConfig::with_defaults(int n_grid, double domain_length, double c) {
    MaxwellConfig cfg;
    cfg.n_grid = n_grid;
    cfg.domain_length = domain_length;
    cfg.c = c;
    cfg.dt = 0.1 * cfg.dx() / c;
    return cfg;
}

std::vector<std::string> MaxwellConfig::validate() const {
    if (n_grid < 4 || !std::has_single_bit(static_cast<unsigned>(n_grid))) {
        throw InvalidArgument("n_grid must be a power of two >= 4, got " +
                              std::to_string(n_grid));
    }
    if (!(domain_length > 0.0)) throw InvalidArgument("domain_length must be positive");
    if (!(c > 0.0)) throw InvalidArgument("c must be positive");
    if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
    std::vector<std::string> warnings;
    const double cfl = courant();
    if (cfl > 1.0) {
        throw InvalidArgument("Courant number c*dt/dx = " + std::to_string(cfl) + " exceeds 1");
    }
    if (cfl > 0.5) {
        warnings.push_back("Courant number c*dt/dx = " + std::to_string(cfl) + " is above 0.5");
    }
    return warnings;
}

FieldState FieldState::zeros(int n_grid) {
    return {Eigen::VectorXd::Zero(n_grid), Eigen::VectorXd::Zero(n_grid),
            Eigen::VectorXd::Zero(n_grid), Eigen::VectorXd::Zero(n_grid)};
}

Eigen::VectorXd flatten(const FieldState& s) {
    const int n = s.n_grid();
    if (s.by.size() != n || s.ey.size() != n || s.ez.size() != n) {
        throw DimensionMismatch("field components have different lengths");
    }
    Eigen::VectorXd u(kFieldCount * n);
    u << s.by, s.bz, s.ey, s.ez;
    return u;
}

FieldState unflatten(const Eigen::VectorXd& u, int n_grid) {
    if (u.size() != kFieldCount * n_grid) {
        throw DimensionMismatch("flat vector of length " + std::to_string(u.size()) +
                                " does not hold 4 fields of " + std::to_string(n_grid));
    }
    return {u.segment(0, n_grid), u.segment(n_grid, n_grid), u.segment(2 * n_grid, n_grid),
            u.segment(3 * n_grid, n_grid)};
}

int field_index(const std::string& name) {
    for (int f = 0; f < kFieldCount; ++f) {
        if (name == kFieldNames[f]) return f;
    }
    throw ParseError("unknown field '" + name + "'");
}

Eigen::Matrix4d jacobian(double c) {
    const double c2 = c * c;
    Eigen::Matrix4d a;
    a << 0, 0, 0, -1,
         0, 0, 1, 0,
         0, c2, 0, 0,
         -c2, 0, 0, 0;
    return a;
}

Eigen::SparseMatrix<double> unit_stencil(int n_grid, Boundary boundary) {
    if (n_grid < 4) throw InvalidArgument("stencil needs at least 4 nodes");
    std::vector<Eigen::Triplet<double>> entries;
    for (int i = 0; i < n_grid; ++i) {
        int right = i + 1;
        int left = i - 1;
        if (boundary == Boundary::periodic) {
            right %= n_grid;
            left = (left + n_grid) % n_grid;
        }
        if (right < n_grid) entries.emplace_back(i, right, 1.0);
        if (left >= 0) entries.emplace_back(i, left, -1.0);
    }
    Eigen::SparseMatrix<double> d(n_grid, n_grid);
    d.setFromTriplets(entries.begin(), entries.end());
    return d;
}

Eigen::SparseMatrix<double> shift_operator(int n_grid, double dx, Boundary boundary) {
    Eigen::SparseMatrix<double> d = unit_stencil(n_grid, boundary);
    d *= 1.0 / (2.0 * dx);
    return d;
}

Generator assemble_generator(const MaxwellConfig& config) {
    config.validate();
    const int n = config.n_grid;
    const Eigen::Matrix4d a = jacobian(config.c);
    const Eigen::SparseMatrix<double> d = unit_stencil(n, config.boundary);
    const double scale = -1.0 / (2.0 * config.dx());

    std::vector<Eigen::Triplet<double>> entries;
    for (int f = 0; f < kFieldCount; ++f) {
        for (int g = 0; g < kFieldCount; ++g) {
            if (a(f, g) == 0.0) continue;
            const double w = a(f, g) * scale;
            for (int k = 0; k < d.outerSize(); ++k) {
                for (Eigen::SparseMatrix<double>::InnerIterator it(d, k); it; ++it) {
                    entries.emplace_back(f * n + static_cast<int>(it.row()),
                                         g * n + static_cast<int>(it.col()), w * it.value());
                }
            }
        }
    }
    Generator gen;
    gen.dimension = kFieldCount * n;
    gen.matrix.resize(gen.dimension, gen.dimension);
    gen.matrix.setFromTriplets(entries.begin(), entries.end());
    gen.pauli_form = pauli_decomp::decompose(Eigen::MatrixXd(gen.matrix));
    return gen;
}

Eigen::VectorXd classical_step(const Eigen::VectorXd& u, const Eigen::SparseMatrix<double>& g,
                               double dt) {
    if (g.cols() != u.size()) throw DimensionMismatch("generator and state sizes differ");
    return u + dt * (g * u);
}

int step_count(double t_final, double dt) {
    if (t_final < 0.0) throw InvalidArgument("t_final must be non-negative");
    return static_cast<int>(std::lround(t_final / dt));
}

std::vector<Snapshot> classical_solve(const MaxwellConfig& config, const FieldState& initial,
                                      double t_final) {
    config.validate();
    const int steps = step_count(t_final, config.dt);
    const Generator gen = assemble_generator(config);
    std::vector<Snapshot> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    Eigen::VectorXd u = flatten(initial);
    out.push_back({0.0, initial});
    for (int k = 1; k <= steps; ++k) {
        u = classical_step(u, gen.matrix, config.dt);
        out.push_back({k * config.dt, unflatten(u, config.n_grid)});
    }
    return out;
}

FieldState gaussian_initial(const MaxwellConfig& config, double center, double width) {
    if (!(center > 0.0 && center < config.domain_length)) {
        throw InvalidArgument("pulse center must lie strictly inside the domain");
    }
    if (!(width > 0.0)) throw InvalidArgument("pulse width must be positive");
    FieldState s = FieldState::zeros(config.n_grid);
    const double dx = config.dx();
    for (int i = 0; i < config.n_grid; ++i) {
        const double r = i * dx - center;
        s.bz[i] = std::exp(-r * r / (2.0 * width * width));
    }
    return s;
}

}  // namespace qmaxwell::fdtd
