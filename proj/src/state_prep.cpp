#include "qmaxwell/state_prep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qmaxwell/errors.hpp"

namespace qmaxwell::state_prep {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Joint register |b> (x) |a>: a on qubits [0, n), b on [n, 2n).
StateVector tensor(const StateVector& a, const StateVector& b) {
    const std::size_t da = a.dimension();
    std::vector<Complex> amps(da * b.dimension());
    for (std::size_t j = 0; j < b.dimension(); ++j) {
        for (std::size_t i = 0; i < da; ++i) amps[j * da + i] = b[j] * a[i];
    }
    return StateVector(std::move(amps));
}

Eigen::VectorXd sample_gaussian(double center, double width, double domain_length, int n) {
    Eigen::VectorXd v(n);
    const double dx = domain_length / n;
    for (int i = 0; i < n; ++i) {
        const double r = i * dx - center;
        v[i] = std::exp(-r * r / (2.0 * width * width));
    }
    return v;
}

}  // namespace

void SpsaConfig::validate() const {
    if (iterations < 1) throw InvalidArgument("SPSA needs at least one iteration");
    if (!(c > 0.0)) throw InvalidArgument("SPSA perturbation c must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("SPSA alpha must lie in (0, 1]");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("SPSA gamma must lie in (0, 1]");
    if (restarts < 1) throw InvalidArgument("SPSA needs at least one restart");
}

StateVector target_state(const fdtd::MaxwellConfig& config, double center, double width) {
    const Eigen::VectorXd u = fdtd::flatten(fdtd::gaussian_initial(config, center, width));
    StateVector s = StateVector::from_real(std::span<const double>(u.data(), u.size()));
    if (s.norm() == 0.0) throw InvalidArgument("initial condition has zero norm");
    s.normalize();
    return s;
}

double swap_test(const StateVector& a, const StateVector& b, const mclachlan::EvaluationMode& mode,
                 std::uint64_t circuit_id) {
    if (a.n_qubits() != b.n_qubits()) throw DimensionMismatch("SWAP test registers differ");
    const int n = a.n_qubits();
    const int ancilla = 2 * n;
    // Ancilla is the most significant qubit, starting in |0>.
    std::vector<Complex> amps(std::size_t{2} << (2 * n));
    const StateVector joint = tensor(a, b);
    std::copy(joint.amplitudes().begin(), joint.amplitudes().end(), amps.begin());
    StateVector s(std::move(amps));

    apply_gate_inplace(s, hadamard(ancilla));
    for (int q = 0; q < n; ++q) {
        // Controlled-SWAP(a_q, b_q) = CNOT(b,a) Toffoli(anc,a,b) CNOT(b,a).
        apply_gate_inplace(s, cnot(n + q, q));
        apply_gate_inplace(s, controlled_on(cnot(q, n + q), ancilla));
        apply_gate_inplace(s, cnot(n + q, q));
    }
    apply_gate_inplace(s, hadamard(ancilla));

    const std::uint64_t mask = std::uint64_t{1} << ancilla;
    double p0 = 0.0;
    for (std::uint64_t j = 0; j < s.dimension(); ++j) {
        if (!(j & mask)) p0 += std::norm(s[j]);
    }
    p0 = std::clamp(p0, 0.0, 1.0);
    if (const auto* shots = std::get_if<mclachlan::Shots>(&mode)) {
        if (shots->shots == 0) throw InvalidArgument("shot count must be at least 1");
        std::mt19937_64 rng(mix(shots->seed ^ mix(circuit_id)));
        std::binomial_distribution<std::uint64_t> draw(shots->shots, p0);
        return 2.0 * static_cast<double>(draw(rng)) / static_cast<double>(shots->shots) - 1.0;
    }
    return 2.0 * p0 - 1.0;
}

double fidelity(const ansatz::GateSequence& seq, std::span<const double> theta,
                const StateVector& target, const mclachlan::EvaluationMode& mode) {
    const StateVector phi = ansatz::state(seq, theta);
    if (phi.n_qubits() != target.n_qubits()) {
        throw DimensionMismatch("ansatz and target have different qubit counts");
    }
    if (mclachlan::is_exact(mode)) return std::clamp(std::norm(inner_product(phi, target)), 0.0, 1.0);
    return std::clamp(swap_test(phi, target, mode), 0.0, 1.0);
}

double cost(const ansatz::GateSequence& seq, std::span<const double> theta,
            const StateVector& target, const mclachlan::EvaluationMode& mode) {
    return 1.0 - fidelity(seq, theta, target, mode);
}

FitResult spsa_fit(const ansatz::GateSequence& seq, const StateVector& target,
                   const SpsaConfig& config, double eps_init,
                   const mclachlan::EvaluationMode& mode,
                   std::optional<std::vector<double>> initial) {
    config.validate();
    if (!(eps_init > 0.0 && eps_init < 1.0)) throw InvalidArgument("eps_init must lie in (0, 1)");
    const std::size_t d = seq.param_count();
    if (initial && initial->size() != d) throw DimensionMismatch("initial theta length mismatch");

    const std::uint64_t base_seed =
        std::holds_alternative<mclachlan::Shots>(mode) ? std::get<mclachlan::Shots>(mode).seed : 0;
    std::uint64_t evaluation = 0;
    auto evaluate = [&](std::span<const double> th) {
        // Every sampled evaluation gets its own stream.
        const auto m = mclachlan::reseeded(mode, mix(base_seed ^ mix(++evaluation)));
        return cost(seq, th, target, m);
    };

    FitResult best;
    best.final_cost = std::numeric_limits<double>::infinity();
    for (int r = 0; r < config.restarts; ++r) {
        std::mt19937_64 rng(mix(config.seed ^ mix(static_cast<std::uint64_t>(r) + 1)));
        std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
        std::bernoulli_distribution coin(0.5);

        std::vector<double> theta(d);
        if (r == 0 && initial) {
            theta = *initial;
        } else {
            for (auto& t : theta) t = angle(rng);
        }
        std::vector<double> best_theta = theta;
        double best_cost = evaluate(theta);
        std::vector<double> history{best_cost};
        int iterations = 0;

        std::vector<double> delta(d), plus(d), minus(d);
        while (iterations < config.iterations && best_cost > config.tolerance) {
            const int k = iterations;
            const double ak = config.a / std::pow(k + 1 + config.A, config.alpha);
            const double ck = config.c / std::pow(k + 1, config.gamma);
            for (std::size_t i = 0; i < d; ++i) {
                delta[i] = coin(rng) ? 1.0 : -1.0;
                plus[i] = theta[i] + ck * delta[i];
                minus[i] = theta[i] - ck * delta[i];
            }
            const double diff = (evaluate(plus) - evaluate(minus)) / (2.0 * ck);
            for (std::size_t i = 0; i < d; ++i) theta[i] -= ak * diff / delta[i];
            ++iterations;
            const double current = evaluate(theta);
            history.push_back(current);
            if (current < best_cost) {
                best_cost = current;
                best_theta = theta;
            }
        }
        if (best_cost < best.final_cost) {
            best.theta0 = best_theta;
            best.final_cost = best_cost;
            best.cost_history = std::move(history);
            best.iterations_run = iterations;
            best.best_restart = r;
        }
    }
    best.converged = best.final_cost <= eps_init;
    return best;
}

DepthSearchResult fit_increasing_depth(ansatz::AnsatzSpec spec, const StateVector& target,
                                       const SpsaConfig& config, double eps_init,
                                       int max_layers, const mclachlan::EvaluationMode& mode) {
    if (max_layers < spec.layers) throw InvalidArgument("max_layers below starting depth");
    DepthSearchResult out{spec, {}};
    for (int l = spec.layers; l <= max_layers; ++l) {
        spec.layers = l;
        out.spec = spec;
        out.fit = spsa_fit(ansatz::build(spec), target, config, eps_init, mode);
        if (out.fit.converged) break;
    }
    return out;
}

double discretization_error(double center, double width, double domain_length, int n_grid) {
    if (n_grid < 4) throw InvalidArgument("n_grid must be at least 4");
    const int fine_n = n_grid * kRefinementFactor;
    const Eigen::VectorXd coarse = sample_gaussian(center, width, domain_length, n_grid);
    Eigen::VectorXd fine = sample_gaussian(center, width, domain_length, fine_n);
    Eigen::VectorXd prolonged(fine_n);
    for (int j = 0; j < fine_n; ++j) {
        const int i = j / kRefinementFactor;
        const double t = static_cast<double>(j % kRefinementFactor) / kRefinementFactor;
        prolonged[j] = (1.0 - t) * coarse[i] + t * coarse[(i + 1) % n_grid];
    }
    const double pn = prolonged.norm();
    const double fn = fine.norm();
    if (pn == 0.0 || fn == 0.0) throw InvalidArgument("initial condition has zero norm");
    return (prolonged / pn - fine / fn).norm();
}

int refine_mesh(double center, double width, double domain_length, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("discretization tolerance must be positive");
    for (int n = 4; n <= kMaxGrid; n *= 2) {
        if (discretization_error(center, width, domain_length, n) < eps) return n;
    }
    throw InvalidArgument("mesh refinement exceeded " + std::to_string(kMaxGrid) + " nodes");
}

double sign_alignment(const StateVector& state, const StateVector& target) {
    if (state.dimension() != target.dimension()) throw DimensionMismatch("sign alignment sizes");
    std::size_t k = 0;
    for (std::size_t j = 1; j < state.dimension(); ++j) {
        if (std::abs(state[j]) > std::abs(state[k])) k = j;
    }
    return (state[k] * std::conj(target[k])).real() < 0.0 ? -1.0 : 1.0;
}

}  // namespace qmaxwell::state_prep
