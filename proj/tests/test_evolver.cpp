#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qmaxwell/errors.hpp"
#include "qmaxwell/evolver.hpp"
#include "qmaxwell/maxwell.hpp"
#include "qmaxwell/metrics.hpp"
#include "qmaxwell/state_prep.hpp"

using namespace qmaxwell;
using namespace qmaxwell::evolver;
using ansatz::Family;

namespace {

Eigen::MatrixXd random_psd(int d, int rank, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd b(d, rank);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < rank; ++c) b(r, c) = g(rng);
    }
    return b * b.transpose();
}

Eigen::VectorXd random_vector(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXd v(d);
    for (int k = 0; k < d; ++k) v[k] = g(rng);
    return v;
}

double state_distance(const StateVector& a, const StateVector& b) {
    return (oracle::to_eigen(a) - oracle::to_eigen(b)).norm();
}

}  // namespace

TEST_CASE("solve_flow examples") {
    const Eigen::VectorXd c = Eigen::Vector3d(1, -2, 3);
    const auto id = solve_flow(Eigen::MatrixXd::Identity(3, 3), c, SvdCutoff{});
    CHECK((id.theta_dot - c).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(id.diagnostics.rank == 3);

    const Eigen::Matrix2d l = Eigen::Vector2d(1, 0).asDiagonal();
    const auto drop = solve_flow(l, Eigen::Vector2d(1, 1), SvdCutoff{1e-8});
    CHECK(drop.theta_dot[0] == doctest::Approx(1.0));
    CHECK(drop.theta_dot[1] == 0.0);
    CHECK(drop.diagnostics.rank == 1);
    CHECK(drop.diagnostics.residual == doctest::Approx(1.0));
}

TEST_CASE("an all-zero metric gives a flagged zero flow") {
    const auto z = solve_flow(Eigen::MatrixXd::Zero(2, 2), Eigen::Vector2d(1, 1), SvdCutoff{});
    CHECK(z.diagnostics.degenerate);
    CHECK(z.theta_dot.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("solve_flow input validation") {
    CHECK_THROWS_AS(solve_flow(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector3d(1, 1, 1), SvdCutoff{}),
                    DimensionMismatch);
    CHECK_THROWS_AS(solve_flow(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(1, 1), SvdCutoff{1.5}),
                    InvalidArgument);
    CHECK_THROWS_AS(solve_flow(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(1, 1), Ridge{-1.0}),
                    InvalidArgument);
}

TEST_CASE("truncated solve is least-squares optimal") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::MatrixXd l = random_psd(10, 6, rng);
        const Eigen::VectorXd c = random_vector(10, rng);
        const auto sol = solve_flow(l, c, SvdCutoff{});
        const double best = (l * sol.theta_dot - c).norm();
        CHECK(sol.diagnostics.residual == doctest::Approx(best));
        for (int k = 0; k < 100; ++k) {
            const Eigen::VectorXd cand = sol.theta_dot + 0.1 * random_vector(10, rng);
            CHECK(best <= (l * cand - c).norm() + 1e-12);
        }
    }
}

TEST_CASE("larger ridge never increases the flow norm") {
    std::mt19937_64 rng(2);
    const Eigen::MatrixXd l = random_psd(8, 5, rng);
    const Eigen::VectorXd c = random_vector(8, rng);
    double prev = std::numeric_limits<double>::infinity();
    for (double lam : {1e-10, 1e-6, 1e-3, 1e-1, 1.0, 10.0}) {
        const double n = solve_flow(l, c, Ridge{lam}).theta_dot.norm();
        CHECK(n <= prev + 1e-12);
        prev = n;
    }
}

TEST_CASE("step") {
    const std::vector<double> theta{0.5, -1.0};
    CHECK(step(theta, Eigen::Vector2d::Zero(), 0.1) == theta);
    CHECK(step(theta, Eigen::Vector2d(3, 4), 0.0) == theta);
    const auto out = step(std::vector<double>{0.0}, Eigen::VectorXd::Constant(1, 2.0), 0.1);
    CHECK(out[0] == doctest::Approx(0.2));
    CHECK_THROWS_AS(step(theta, Eigen::Vector3d::Zero(), 0.1), DimensionMismatch);
}

TEST_CASE("evolution at t_final = 0 returns the initial snapshot") {
    const auto seq = ansatz::build({Family::rycry_linear, 3, 1});
    std::mt19937_64 rng(3);
    const auto theta = oracle::random_theta(seq.param_count(), rng);
    EvolutionConfig cfg;
    cfg.t_final = 0.0;
    const auto traj = evolve(seq, theta, pauli_decomp::PauliSum{3, {}}, cfg);
    REQUIRE(traj.states.size() == 1);
    CHECK(traj.steps == 0);
    CHECK(traj.times[0] == 0.0);
    CHECK(traj.states[0] == ansatz::state(seq, theta));
}

TEST_CASE("a zero generator leaves the parameters fixed") {
    const auto seq = ansatz::build({Family::ry_full, 3, 2});
    std::mt19937_64 rng(4);
    const auto theta = oracle::random_theta(seq.param_count(), rng);
    EvolutionConfig cfg;
    cfg.dt = 0.05;
    cfg.t_final = 0.5;
    const auto traj = evolve(seq, theta, pauli_decomp::PauliSum{3, {}}, cfg);
    CHECK(traj.steps == 10);
    for (const auto& t : traj.thetas) CHECK(t == theta);
}

TEST_CASE("snapshot times and norms") {
    const auto seq = ansatz::build({Family::rycry_linear, 4, 1});
    std::mt19937_64 rng(5);
    const auto theta = oracle::random_theta(seq.param_count(), rng);
    const auto gen = fdtd::assemble_generator(fdtd::MaxwellConfig::with_defaults(4)).pauli_form;
    EvolutionConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 0.2;
    cfg.snapshot_stride = 4;
    const auto traj = evolve(seq, theta, gen, cfg);
    CHECK(traj.steps == 20);
    CHECK(traj.diagnostics.size() == 20);
    REQUIRE(traj.times.size() == 6);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        CHECK(traj.times[k] == doctest::Approx(0.04 * static_cast<double>(k)));
        CHECK(traj.thetas[k].size() == theta.size());
        CHECK(traj.states[k].norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("halving dt reduces the end-state error at first order") {
    const auto seq = ansatz::build({Family::rycry_linear, 4, 1});
    std::mt19937_64 rng(6);
    const auto theta = oracle::random_theta(seq.param_count(), rng);
    const auto gen = fdtd::assemble_generator(fdtd::MaxwellConfig::with_defaults(4)).pauli_form;
    auto run = [&](double dt) {
        EvolutionConfig cfg;
        cfg.dt = dt;
        cfg.t_final = 0.1;
        // A strong shift keeps the flow smooth enough to sit in the asymptotic regime.
        cfg.regularization = Ridge{1e-2};
        return evolve(seq, theta, gen, cfg).states.back();
    };
    const double base = 0.002;
    const auto ref = run(base / 8);
    const double e1 = state_distance(run(base), ref);
    const double e2 = state_distance(run(base / 2), ref);
    CHECK(e2 < e1);
    // First order: the error shrinks by roughly 2x (7/3 against a dt/8 reference).
    CHECK(e1 / e2 > 2.0);
    CHECK(e1 / e2 < 2.7);
}

TEST_CASE("evolution is deterministic in both modes") {
    const auto seq = ansatz::build({Family::rycry_linear, 4, 1});
    std::mt19937_64 rng(7);
    const auto theta = oracle::random_theta(seq.param_count(), rng);
    const auto gen = fdtd::assemble_generator(fdtd::MaxwellConfig::with_defaults(4)).pauli_form;
    EvolutionConfig cfg;
    cfg.dt = 0.02;
    cfg.t_final = 0.1;
    for (const mclachlan::EvaluationMode& mode :
         {mclachlan::EvaluationMode{mclachlan::Exact{}}, mclachlan::EvaluationMode{mclachlan::Shots{2000, 3}}}) {
        cfg.mode = mode;
        const auto a = evolve(seq, theta, gen, cfg);
        const auto b = evolve(seq, theta, gen, cfg);
        CHECK(a.thetas == b.thetas);
        CHECK(a.tally.shots == b.tally.shots);
    }
}

TEST_CASE("shot-mode tally is the per-step expanded count times the step count") {
    const auto seq = ansatz::build({Family::rycry_linear, 4, 1});
    const std::vector<double> theta(seq.param_count(), 0.3);
    const auto gen = fdtd::assemble_generator(fdtd::MaxwellConfig::with_defaults(4)).pauli_form;
    EvolutionConfig cfg;
    cfg.dt = 0.02;
    cfg.t_final = 0.1;
    cfg.mode = mclachlan::Shots{500, 1};
    const auto traj = evolve(seq, theta, gen, cfg);
    const auto per = mclachlan::expanded_counts(seq, gen.terms.size());
    CHECK(traj.tally.lambda_circuits == 5 * per.lambda_circuits);
    CHECK(traj.tally.c_circuits == 5 * per.c_circuits);
    CHECK(traj.tally.shots == 500 * 5 * (per.lambda_circuits + per.c_circuits));
}

TEST_CASE("RK4 integrates the same flow to higher order") {
    const auto seq = ansatz::build({Family::rycry_linear, 4, 1});
    std::mt19937_64 rng(8);
    const auto theta = oracle::random_theta(seq.param_count(), rng);
    const auto gen = fdtd::assemble_generator(fdtd::MaxwellConfig::with_defaults(4)).pauli_form;
    auto run = [&](double dt, Integrator integ) {
        EvolutionConfig cfg;
        cfg.dt = dt;
        cfg.t_final = 0.2;
        cfg.regularization = Ridge{1e-2};
        cfg.integrator = integ;
        return evolve(seq, theta, gen, cfg).states.back();
    };
    const auto ref = run(0.0025, Integrator::rk4);
    CHECK(state_distance(run(0.01, Integrator::rk4), ref) < state_distance(run(0.01, Integrator::euler), ref));
    CHECK(parse_integrator("rk4") == Integrator::rk4);
    CHECK_THROWS(parse_integrator("leapfrog"));
}

TEST_CASE("config validation") {
    EvolutionConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg.dt = 0.1;
    cfg.t_final = -1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg.t_final = 1.0;
    cfg.snapshot_stride = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg.snapshot_stride = 1;
    cfg.regularization = SvdCutoff{0.0};
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("6-qubit Maxwell run tracks the classical reference") {
    const auto mc = fdtd::MaxwellConfig::with_defaults(16);
    const auto target = state_prep::target_state(mc, 0.5, 0.08);
    const auto seq = ansatz::build({Family::rycry_full, 6, 2});
    state_prep::SpsaConfig sc;
    sc.iterations = 50000;
    sc.a = 2.0;
    sc.seed = 1;
    const auto fit = state_prep::spsa_fit(seq, target, sc, 1e-2);
    REQUIRE(fit.converged);

    EvolutionConfig cfg;
    cfg.dt = mc.dt / 8;
    cfg.snapshot_stride = 8;
    cfg.t_final = 0.5;
    cfg.regularization = Ridge{1e-5};
    const auto traj = evolve(seq, fit.theta0, fdtd::assemble_generator(mc).pauli_form, cfg);
    const auto ref = fdtd::classical_solve(mc, fdtd::gaussian_initial(mc, 0.5, 0.08), 0.5);
    REQUIRE(traj.states.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
        CHECK(traj.times[k] == doctest::Approx(ref[k].time));
        const double e = metrics::trace_error(traj.states[k], fdtd::flatten(ref[k].fields));
        CHECK(1 - e * e >= 0.99);
    }
}
