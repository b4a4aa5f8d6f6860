#include "qmaxwell/evolver.hpp"

#include <cmath>

#include "qmaxwell/errors.hpp"
#include "qmaxwell/maxwell.hpp"

namespace qmaxwell::evolver {

namespace {

std::uint64_t step_seed(std::uint64_t seed, int step) {
    std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(step + 1));
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

FlowSolution solve_truncated(const Eigen::MatrixXd& lambda, const Eigen::VectorXd& c,
                             double rho) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(lambda, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    FlowSolution out{Eigen::VectorXd::Zero(c.size()), {}};
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    const double cutoff = rho * sigma_max;
    Eigen::VectorXd coeffs = svd.matrixU().transpose() * c;
    int rank = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        if (sigma(k) <= 0.0 || sigma(k) < cutoff) {
            coeffs(k) = 0.0;
            continue;
        }
        coeffs(k) /= sigma(k);
        ++rank;
    }
    auto& diag = out.diagnostics;
    diag.rank = rank;
    if (rank == 0) {
        diag.degenerate = true;
        diag.residual = c.norm();
        return out;
    }
    out.theta_dot = svd.matrixV() * coeffs;
    diag.smallest_retained = sigma(rank - 1);
    diag.condition = sigma_max / diag.smallest_retained;
    diag.residual = (lambda * out.theta_dot - c).norm();
    return out;
}

FlowSolution solve_ridge(const Eigen::MatrixXd& lambda, const Eigen::VectorXd& c,
                         double shift) {
    const auto d = lambda.rows();
    const Eigen::MatrixXd shifted = lambda + shift * Eigen::MatrixXd::Identity(d, d);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(shifted);
    FlowSolution out{cod.solve(c), {}};
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted);
    const Eigen::VectorXd& sigma = svd.singularValues();
    auto& diag = out.diagnostics;
    diag.rank = static_cast<int>(cod.rank());
    if (diag.rank == 0) {
        diag.degenerate = true;
        out.theta_dot.setZero();
        diag.residual = c.norm();
        return out;
    }
    diag.smallest_retained = sigma(diag.rank - 1);
    diag.condition = sigma(0) / diag.smallest_retained;
    diag.residual = (lambda * out.theta_dot - c).norm();
    return out;
}

}  // namespace

void validate_regularization(const Regularization& regularization) {
    if (const auto* cut = std::get_if<SvdCutoff>(&regularization)) {
        if (!(cut->rho > 0.0 && cut->rho < 1.0)) {
            throw InvalidArgument("SVD cutoff must lie in (0, 1)");
        }
    } else if (!(std::get<Ridge>(regularization).lambda >= 0.0)) {
        throw InvalidArgument("ridge parameter must be non-negative");
    }
}

FlowSolution solve_flow(const Eigen::MatrixXd& lambda, const Eigen::VectorXd& c,
                        const Regularization& regularization) {
    if (lambda.rows() != lambda.cols() || lambda.rows() != c.size()) {
        throw DimensionMismatch("Lambda must be square and conformable with C");
    }
    validate_regularization(regularization);
    if (const auto* cut = std::get_if<SvdCutoff>(&regularization)) {
        return solve_truncated(lambda, c, cut->rho);
    }
    return solve_ridge(lambda, c, std::get<Ridge>(regularization).lambda);
}

std::vector<double> step(std::span<const double> theta, const Eigen::VectorXd& theta_dot,
                         double dt) {
    if (static_cast<Eigen::Index>(theta.size()) != theta_dot.size()) {
        throw DimensionMismatch("theta and theta_dot differ in length");
    }
    std::vector<double> out(theta.begin(), theta.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += dt * theta_dot(static_cast<Eigen::Index>(i));
    }
    return out;
}

Integrator parse_integrator(const std::string& text) {
    if (text == "euler") return Integrator::euler;
    if (text == "rk4") return Integrator::rk4;
    throw InvalidArgument("unknown integrator '" + text + "' (expected euler or rk4)");
}

std::string to_string(Integrator integrator) {
    return integrator == Integrator::euler ? "euler" : "rk4";
}

void EvolutionConfig::validate() const {
    if (!(dt > 0.0)) throw InvalidArgument("evolution dt must be positive");
    if (t_final < 0.0) throw InvalidArgument("t_final must be non-negative");
    if (snapshot_stride < 1) throw InvalidArgument("snapshot_stride must be at least 1");
    validate_regularization(regularization);
    if (const auto* s = std::get_if<mclachlan::Shots>(&mode); s && s->shots == 0) {
        throw InvalidArgument("shot count must be at least 1");
    }
}

Trajectory evolve(const ansatz::GateSequence& seq, std::span<const double> theta0,
                  const pauli_decomp::PauliSum& generator, const EvolutionConfig& config) {
    config.validate();
    if (theta0.size() != seq.param_count()) {
        throw DimensionMismatch("theta0 has " + std::to_string(theta0.size()) +
                                " entries, ansatz has " + std::to_string(seq.param_count()));
    }
    Trajectory traj;
    traj.steps = fdtd::step_count(config.t_final, config.dt);
    std::vector<double> theta(theta0.begin(), theta0.end());

    auto record = [&](int k) {
        traj.times.push_back(k * config.dt);
        traj.thetas.push_back(theta);
        traj.states.push_back(ansatz::state(seq, theta));
    };
    record(0);

    const std::uint64_t base_seed =
        std::holds_alternative<mclachlan::Shots>(config.mode)
            ? std::get<mclachlan::Shots>(config.mode).seed
            : 0;
    for (int k = 0; k < traj.steps; ++k) {
        const auto mode = mclachlan::reseeded(config.mode, step_seed(base_seed, k));
        auto flow_at = [&](std::span<const double> th, const mclachlan::EvaluationMode& m) {
            const auto system =
                mclachlan::evaluate(seq, th, generator, m, &traj.tally, config.options);
            return solve_flow(system.lambda, system.c, config.regularization);
        };
        const auto flow = flow_at(theta, mode);
        traj.diagnostics.push_back(flow.diagnostics);
        if (config.integrator == Integrator::euler) {
            theta = step(theta, flow.theta_dot, config.dt);
        } else {
            const double h = config.dt;
            auto stage_mode = [&](int s) {
                return mclachlan::reseeded(mode, step_seed(step_seed(base_seed, k), s));
            };
            const Eigen::VectorXd k1 = flow.theta_dot;
            const Eigen::VectorXd k2 = flow_at(step(theta, k1, h / 2), stage_mode(1)).theta_dot;
            const Eigen::VectorXd k3 = flow_at(step(theta, k2, h / 2), stage_mode(2)).theta_dot;
            const Eigen::VectorXd k4 = flow_at(step(theta, k3, h), stage_mode(3)).theta_dot;
            theta = step(theta, (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0, h);
        }
        if ((k + 1) % config.snapshot_stride == 0) record(k + 1);
    }
    return traj;
}

}  // namespace qmaxwell::evolver
