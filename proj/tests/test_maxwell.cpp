#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qmaxwell/errors.hpp"
#include "qmaxwell/maxwell.hpp"

using namespace qmaxwell;
using namespace qmaxwell::fdtd;

namespace {

double spectral_norm(const Eigen::SparseMatrix<double>& g) {
    const Eigen::MatrixXd dense(g);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense);
    return svd.singularValues()[0];
}

int argmax_abs(const Eigen::VectorXd& v, int lo, int hi) {
    int best = lo;
    for (int i = lo; i < hi; ++i) {
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    }
    return best;
}

}  // namespace

TEST_CASE("jacobian") {
    Eigen::Matrix4d ref;
    ref << 0, 0, 0, -1,
           0, 0, 1, 0,
           0, 1, 0, 0,
           -1, 0, 0, 0;
    CHECK(jacobian(1.0) == ref);
    const Eigen::MatrixXcd yy = oracle::pauli_word("YY");
    CHECK((yy - jacobian(1.0).cast<Complex>()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::Matrix4d scaled = ref;
    scaled.row(2) *= 4;
    scaled.row(3) *= 4;
    CHECK(jacobian(2.0) == scaled);
}

TEST_CASE("shift operator stencil") {
    const auto d = Eigen::MatrixXd(shift_operator(4, 0.25, Boundary::periodic));
    CHECK(d(0, 0) == 0.0);
    CHECK(d(0, 1) == 2.0);
    CHECK(d(0, 2) == 0.0);
    CHECK(d(0, 3) == -2.0);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(8);
    CHECK((shift_operator(8, 0.125, Boundary::periodic) * ones).cwiseAbs().maxCoeff() == 0.0);
    const auto dz = Eigen::MatrixXd(shift_operator(4, 0.25, Boundary::dirichlet_zero));
    CHECK(dz(0, 3) == 0.0);
    CHECK(dz(3, 0) == 0.0);
}

TEST_CASE("shift operator converges at second order") {
    double prev = 0.0;
    for (int n : {16, 32, 64, 128}) {
        const double dx = 1.0 / n;
        Eigen::VectorXd u(n), du(n);
        for (int i = 0; i < n; ++i) {
            u[i] = std::sin(2 * M_PI * i * dx);
            du[i] = 2 * M_PI * std::cos(2 * M_PI * i * dx);
        }
        const double err = (shift_operator(n, dx, Boundary::periodic) * u - du).cwiseAbs().maxCoeff();
        if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.02));
        prev = err;
    }
}

TEST_CASE("periodic generator at c=1 is exactly antisymmetric") {
    for (int n : {4, 16, 64}) {
        const auto gen = assemble_generator(MaxwellConfig::with_defaults(n));
        const Eigen::MatrixXd g(gen.matrix);
        CHECK((g + g.transpose()).cwiseAbs().maxCoeff() == 0.0);
        const Eigen::MatrixXcd r = pauli_decomp::reconstruct(gen.pauli_form);
        CHECK((r - g.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("generator with c=2 keeps blockwise stencil antisymmetry") {
    auto cfg = MaxwellConfig::with_defaults(8, 1.0, 2.0);
    const Eigen::MatrixXd g(assemble_generator(cfg).matrix);
    const int n = 8;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const Eigen::MatrixXd blk = g.block(a * n, b * n, n, n);
            CHECK((blk + blk.transpose()).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("generator annihilates constant fields") {
    const auto cfg = MaxwellConfig::with_defaults(16);
    const auto gen = assemble_generator(cfg);
    const Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(4, 1, 4).replicate(1, 16).transpose().reshaped();
    CHECK((gen.matrix * u).cwiseAbs().maxCoeff() == 0.0);
    CHECK(classical_step(u, gen.matrix, cfg.dt) == u);
}

TEST_CASE("classical step") {
    const auto cfg = MaxwellConfig::with_defaults(16);
    const Eigen::VectorXd u = flatten(gaussian_initial(cfg, 0.5, 0.08));
    Eigen::SparseMatrix<double> zero(64, 64);
    CHECK(classical_step(u, zero, 0.01) == u);
    const auto gen = assemble_generator(cfg);
    const Eigen::MatrixXd dense = Eigen::MatrixXd::Identity(64, 64) + cfg.dt * Eigen::MatrixXd(gen.matrix);
    CHECK((classical_step(u, gen.matrix, cfg.dt) - dense * u).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("classical solve at t_final = 0") {
    const auto cfg = MaxwellConfig::with_defaults(16);
    const auto ic = gaussian_initial(cfg, 0.5, 0.08);
    const auto traj = classical_solve(cfg, ic, 0.0);
    REQUIRE(traj.size() == 1);
    CHECK(traj[0].time == 0.0);
    CHECK(traj[0].fields == ic);
    CHECK_THROWS_AS(classical_solve(cfg, ic, -1.0), InvalidArgument);
}

TEST_CASE("forward Euler norm growth bound") {
    const auto cfg = MaxwellConfig::with_defaults(32);
    const auto gen = assemble_generator(cfg);
    const double gn = spectral_norm(gen.matrix);
    const double per_step = 1 + std::pow(cfg.dt * gn, 2) / 2 + 1e-12;
    const auto traj = classical_solve(cfg, gaussian_initial(cfg, 0.5, 0.08), 0.5);
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double r = flatten(traj[k].fields).norm() / flatten(traj[k - 1].fields).norm();
        CHECK(r <= per_step);
        CHECK(r >= 1.0 - 1e-12);
    }
    const double steps = static_cast<double>(traj.size() - 1);
    const double drift = flatten(traj.back().fields).norm() / flatten(traj.front().fields).norm() - 1;
    CHECK(drift <= std::exp(steps * std::pow(cfg.dt * gn, 2) / 2) - 1);
}

TEST_CASE("Gaussian pulse splits into left and right movers") {
    const auto cfg = MaxwellConfig::with_defaults(32);
    const double x0 = 0.5;
    const double t = 0.25;
    const auto traj = classical_solve(cfg, gaussian_initial(cfg, x0, 0.08), t);
    const Eigen::VectorXd& bz = traj.back().fields.bz;
    const int n = 32;
    const int left = argmax_abs(bz, 0, n / 2);
    const int right = argmax_abs(bz, n / 2, n);
    CHECK(std::abs(left * cfg.dx() - (x0 - t)) <= 2 * cfg.dx());
    CHECK(std::abs(right * cfg.dx() - (x0 + t)) <= 2 * cfg.dx());
}

TEST_CASE("Gaussian initial condition") {
    const auto cfg = MaxwellConfig::with_defaults(16);
    const auto ic = gaussian_initial(cfg, 0.5, 0.08);
    CHECK(ic.bz[8] == 1.0);
    CHECK(ic.by.cwiseAbs().maxCoeff() == 0.0);
    CHECK(ic.ey.cwiseAbs().maxCoeff() == 0.0);
    CHECK(ic.ez.cwiseAbs().maxCoeff() == 0.0);
    for (int d = 1; d < 8; ++d) CHECK(ic.bz[8 + d] == doctest::Approx(ic.bz[8 - d]).epsilon(1e-14));
}

TEST_CASE("flatten layout") {
    const auto cfg = MaxwellConfig::with_defaults(16);
    const auto ic = gaussian_initial(cfg, 0.5, 0.08);
    const Eigen::VectorXd u = flatten(ic);
    CHECK(unflatten(u, 16) == ic);
    FieldState s = FieldState::zeros(16);
    s.bz[0] = 7.0;
    CHECK(flatten(s)[16] == 7.0);
    for (int k = 0; k < 64; ++k) {
        if (k < 16 || k >= 32) CHECK(u[k] == 0.0);
    }
    CHECK(field_index("ez") == 3);
    CHECK_THROWS(field_index("hx"));
}

TEST_CASE("config validation") {
    auto cfg = MaxwellConfig::with_defaults(16);
    CHECK(cfg.dt == doctest::Approx(0.1 / 16));
    CHECK(cfg.validate().empty());
    cfg.n_grid = 12;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg.n_grid = 2;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = MaxwellConfig::with_defaults(16);
    cfg.dt = 0.8 * cfg.dx();
    CHECK(cfg.validate().size() == 1);
    cfg.dt = 1.5 * cfg.dx();
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    CHECK(step_count(0.5, 0.1 / 16) == 80);
}
