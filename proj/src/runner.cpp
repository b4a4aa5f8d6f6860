#include "qmaxwell/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>

#include "qmaxwell/io.hpp"
#include "qmaxwell/resources.hpp"

namespace qmaxwell::runner {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& file) {
    return (fs::path(dir) / file).string();
}

void write_config(const config::RunConfig& c) {
    io::write_file(join(c.output_dir, "effective_config.ini"), config::to_ini(c));
}

fdtd::FieldState decode(const StateVector& s, double scale, int n_grid) {
    Eigen::VectorXd u(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t k = 0; k < s.dimension(); ++k) u[static_cast<Eigen::Index>(k)] = scale * s[k].real();
    return fdtd::unflatten(u, n_grid);
}

ordered_json fit_json(const FitOutput& f) {
    ordered_json j;
    j["family"] = ansatz::to_string(f.spec.family);
    j["n_qubits"] = f.spec.n_qubits;
    j["layers"] = f.spec.layers;
    j["theta"] = f.fit.theta0;
    j["final_cost"] = f.fit.final_cost;
    j["converged"] = f.fit.converged;
    j["iterations_run"] = f.fit.iterations_run;
    j["best_restart"] = f.fit.best_restart;
    j["cost_history"] = f.fit.cost_history;
    return j;
}

ordered_json report_json(const metrics::ErrorReport& r) {
    ordered_json j;
    j["epsilon_tr"] = r.epsilon_tr;
    j["times"] = r.times;
    j["per_step_trace_error"] = r.per_step_trace_error;
    j["per_step_fidelity"] = r.per_step_fidelity;
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : r.metadata) meta[k] = v;
    j["metadata"] = meta;
    return j;
}

std::map<std::string, std::string> run_metadata(const config::RunConfig& c,
                                                const ansatz::AnsatzSpec& spec) {
    return {{"n_grid", std::to_string(c.maxwell.n_grid)},
            {"family", ansatz::to_string(spec.family)},
            {"layers", std::to_string(spec.layers)},
            {"dt", io::format_double(c.evolution.dt)},
            {"mode", mclachlan::to_string(c.evolution.mode)}};
}

std::vector<io::FieldSnapshot> classical_rows(const std::vector<fdtd::Snapshot>& snaps) {
    std::vector<io::FieldSnapshot> out;
    out.reserve(snaps.size());
    for (const auto& s : snaps) out.push_back({s.time, "classical", s.fields});
    return out;
}

void write_trajectory(const config::RunConfig& c, const std::vector<io::FieldSnapshot>& rows) {
    if (c.write_csv) io::write_file(join(c.output_dir, "trajectory.csv"), io::trajectory_csv(c, rows));
    if (c.write_json) io::write_file(join(c.output_dir, "trajectory.jsonl"), io::trajectory_jsonl(rows));
}

std::uint64_t shot_count(const mclachlan::EvaluationMode& mode) {
    const auto* s = std::get_if<mclachlan::Shots>(&mode);
    return s ? s->shots : 0;
}

ordered_json resources_json(const config::RunConfig& c, const ansatz::AnsatzSpec& spec) {
    const auto seq = ansatz::build(spec);
    const auto generator = fdtd::assemble_generator(c.maxwell);
    const auto step = resources::step_report(seq, generator.pauli_form.terms.size());
    const double d = static_cast<double>(seq.param_count());
    ordered_json j;
    j["params"] = seq.param_count();
    j["generator_terms"] = generator.pauli_form.terms.size();
    j["lambda_circuits_per_step"] = step.headline.lambda_circuits;
    j["c_circuits_per_step"] = step.headline.c_circuits;
    j["expanded_lambda_circuits_per_step"] = step.expanded.lambda_circuits;
    j["expanded_c_circuits_per_step"] = step.expanded.c_circuits;
    j["steps"] = fdtd::step_count(c.evolution.t_final, c.evolution.dt);
    j["shots_per_circuit"] = shot_count(c.evolution.mode);
    if (c.evolution.t_final > 0.0) {
        j["query_cost"] = resources::query_cost(c.evolution.t_final, c.evolution.dt, d, c.query_epsilon);
    } else {
        j["query_cost"] = 0.0;
    }
    j["query_cost_constant"] = resources::kQueryConstant;
    j["query_cost_note"] = "order-of-magnitude estimate t*d^2/(dt*eps^2), constant fixed to 1";
    return j;
}

int cmd_reference(const config::RunConfig& c, std::ostream& log) {
    const auto initial = fdtd::gaussian_initial(c.maxwell, c.center, c.width);
    const auto snaps = fdtd::classical_solve(c.maxwell, initial, c.evolution.t_final);
    write_trajectory(c, classical_rows(snaps));
    write_config(c);
    log << "reference: " << snaps.size() << " snapshots written to " << c.output_dir << "\n";
    return 0;
}

void write_fit(const config::RunConfig& c, const FitOutput& f) {
    ordered_json j = fit_json(f);
    if (c.eps_discretization > 0.0) {
        const int n = state_prep::refine_mesh(c.center, c.width, c.maxwell.domain_length,
                                              c.eps_discretization);
        j["refined_n_grid"] = n;
        j["discretization_error"] =
            state_prep::discretization_error(c.center, c.width, c.maxwell.domain_length, c.maxwell.n_grid);
    }
    j["config"] = io::config_json(c);
    io::write_file(join(c.output_dir, "params.json"), io::dump(j));
}

int cmd_init_fit(const config::RunConfig& c, std::ostream& log) {
    if (c.eps_discretization > 0.0) {
        const int n = state_prep::refine_mesh(c.center, c.width, c.maxwell.domain_length,
                                              c.eps_discretization);
        if (n > c.maxwell.n_grid) {
            log << "warning: initial condition needs n_grid >= " << n << " for eps_discretization = "
                << io::format_double(c.eps_discretization) << "\n";
        }
    }
    const FitOutput f = initial_fit(c);
    write_fit(c, f);
    write_config(c);
    log << "init-fit: " << ansatz::to_string(f.spec.family) << " L=" << f.spec.layers
        << " cost=" << io::format_double(f.fit.final_cost)
        << (f.fit.converged ? " (converged)" : " (not converged)") << "\n";
    return 0;
}

void write_solve(const config::RunConfig& c, const FitOutput& f, const SolveOutput& s) {
    const int n = c.maxwell.n_grid;
    const auto& traj = s.trajectory;
    const double initial_norm =
        fdtd::flatten(fdtd::gaussian_initial(c.maxwell, c.center, c.width)).norm();
    std::vector<io::FieldSnapshot> rows;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const double scale =
            s.reference ? fdtd::flatten((*s.reference)[k].fields).norm() : initial_norm;
        rows.push_back({traj.times[k], "quantum", decode(traj.states[k], s.sign * scale, n)});
    }
    if (s.reference) {
        for (const auto& r : classical_rows(*s.reference)) rows.push_back(r);
    }
    write_trajectory(c, rows);

    ordered_json j;
    j["config"] = io::config_json(c);
    j["ansatz"] = {{"family", ansatz::to_string(s.spec.family)},
                   {"n_qubits", s.spec.n_qubits},
                   {"layers", s.spec.layers},
                   {"params", ansatz::param_count(s.spec)}};
    j["initial_fit_cost"] = f.fit.final_cost;
    j["steps"] = traj.steps;
    j["snapshots"] = traj.times.size();
    j["sign"] = s.sign;

    double max_condition = 0.0;
    double max_residual = 0.0;
    double min_retained = std::numeric_limits<double>::infinity();
    std::vector<double> residuals;
    for (const auto& d : traj.diagnostics) {
        max_condition = std::max(max_condition, d.condition);
        max_residual = std::max(max_residual, d.residual);
        if (!d.degenerate) min_retained = std::min(min_retained, d.smallest_retained);
        residuals.push_back(d.residual);
    }
    ordered_json diag;
    diag["degenerate_steps"] = s.degenerate_steps;
    diag["max_condition"] = max_condition;
    diag["max_residual"] = max_residual;
    diag["min_retained_singular_value"] = std::isfinite(min_retained) ? min_retained : 0.0;
    diag["residuals"] = residuals;
    double max_imag = 0.0;
    for (const auto& st : traj.states) max_imag = std::max(max_imag, st.max_imag());
    diag["max_imaginary_amplitude"] = max_imag;
    j["diagnostics"] = diag;
    j["warning"] = s.degenerate_steps > 0 || !f.fit.converged;

    ordered_json tally;
    tally["lambda_circuits"] = traj.tally.lambda_circuits;
    tally["c_circuits"] = traj.tally.c_circuits;
    tally["shots"] = traj.tally.shots;
    j["executed"] = tally;
    j["resources"] = resources_json(c, s.spec);
    if (s.report) j["error_report"] = report_json(*s.report);
    io::write_file(join(c.output_dir, "report.json"), io::dump(j));
}

int cmd_solve(const config::RunConfig& c, bool with_reference, std::ostream& log) {
    const FitOutput f = c.theta_file.empty() ? initial_fit(c) : read_params(c.theta_file);
    if (f.spec.n_qubits != c.n_qubits()) {
        throw InvalidArgument("parameter file is for " + std::to_string(f.spec.n_qubits) +
                              " qubits, config needs " + std::to_string(c.n_qubits()));
    }
    const SolveOutput s = solve(c, f, with_reference);
    write_solve(c, f, s);
    write_config(c);
    log << "solve: " << s.trajectory.steps << " steps, " << s.trajectory.times.size()
        << " snapshots";
    if (s.report) log << ", epsilon_tr=" << io::format_double(s.report->epsilon_tr);
    log << "\n";
    if (s.degenerate_steps > 0) {
        log << "warning: " << s.degenerate_steps << " steps had no singular value above the cutoff\n";
    }
    if (!f.fit.converged) log << "warning: initial fit did not reach eps_init\n";
    return 0;
}

std::vector<metrics::TimedVector> timed(const std::vector<io::FieldSnapshot>& snaps) {
    std::vector<metrics::TimedVector> out;
    for (const auto& s : snaps) out.push_back({s.time, fdtd::flatten(s.fields)});
    return out;
}

std::vector<io::FieldSnapshot> pick(const io::TrajectoryFile& f, const std::string& preferred) {
    auto snaps = f.of_source(preferred);
    if (snaps.empty() && !f.snapshots.empty()) snaps = f.of_source(f.snapshots.front().source);
    if (snaps.empty()) throw InvalidArgument("trajectory file has no snapshots");
    return snaps;
}

std::string header_value(const io::TrajectoryFile& f, const std::string& key) {
    for (const auto& [k, v] : f.header) {
        if (k == key) return v;
    }
    return "";
}

int cmd_compare(const config::RunConfig& c, const std::vector<std::string>& inputs,
                std::ostream& log) {
    if (inputs.size() != 2) throw InvalidArgument("compare needs exactly two trajectory files");
    const auto a = io::read_trajectory_csv(io::read_file(inputs[0]), inputs[0]);
    const auto b = io::read_trajectory_csv(io::read_file(inputs[1]), inputs[1]);
    const auto sa = pick(a, "quantum");
    const auto sb = pick(b, "classical");
    // Alignment tolerance: half the snapshot spacing of the first file.
    double spacing = 0.0;
    for (std::size_t k = 1; k < sa.size(); ++k) {
        const double gap = sa[k].time - sa[k - 1].time;
        if (gap > 0.0 && (spacing == 0.0 || gap < spacing)) spacing = gap;
    }
    if (spacing == 0.0) spacing = c.evolution.dt * c.evolution.snapshot_stride;
    auto report = metrics::time_average_trace_error(timed(sa), timed(sb), spacing);
    const std::string layers = header_value(a, "ansatz.layers");
    report.metadata = {{"a", inputs[0]}, {"b", inputs[1]},
                       {"source_a", sa.front().source}, {"source_b", sb.front().source},
                       {"layers", layers}, {"family", header_value(a, "ansatz.family")},
                       {"n_grid", header_value(a, "maxwell.n_grid")},
                       {"dt", header_value(a, "evolution.dt")},
                       {"mode", header_value(a, "evolution.mode")}};
    if (c.write_json) io::write_file(join(c.output_dir, "compare.json"), io::dump(report_json(report)));
    if (c.write_csv) {
        io::write_file(join(c.output_dir, "compare.csv"),
                       io::config_header(c) + "layers,epsilon_tr\n" + layers + "," +
                           io::format_double(report.epsilon_tr) + "\n");
    }
    write_config(c);
    log << "compare: epsilon_tr=" << io::format_double(report.epsilon_tr) << "\n";
    return 0;
}

int cmd_ansatz(const config::RunConfig& c, std::ostream& log) {
    const auto seq = ansatz::build(c.ansatz);
    ordered_json j;
    j["family"] = ansatz::to_string(c.ansatz.family);
    j["n_qubits"] = c.ansatz.n_qubits;
    j["layers"] = c.ansatz.layers;
    j["params"] = seq.param_count();
    j["logical_depth"] = ansatz::logical_depth(seq);
    ordered_json gates = ordered_json::array();
    std::size_t next = 0;
    for (std::size_t g = 0; g < seq.gates.size(); ++g) {
        ordered_json e;
        e["gate"] = seq.gates[g].name();
        e["qubits"] = seq.gates[g].qubits();
        if (next < seq.slots.size() && seq.slots[next] == g) e["param"] = next++;
        gates.push_back(e);
    }
    j["gates"] = gates;
    if (c.write_json) io::write_file(join(c.output_dir, "ansatz.json"), io::dump(j));
    if (c.write_csv) {
        std::string table = io::config_header(c) + "family,n_qubits,layers,params,logical_depth\n";
        for (const auto family : ansatz::kAllFamilies) {
            for (int l = 1; l <= c.max_layers; ++l) {
                const ansatz::AnsatzSpec spec{family, c.ansatz.n_qubits, l};
                table += ansatz::to_string(family) + "," + std::to_string(spec.n_qubits) + "," +
                         std::to_string(l) + "," + std::to_string(ansatz::param_count(spec)) + "," +
                         std::to_string(ansatz::logical_depth(spec)) + "\n";
            }
        }
        io::write_file(join(c.output_dir, "ansatz.csv"), table);
    }
    write_config(c);
    log << "ansatz: " << ansatz::to_string(c.ansatz.family) << " N=" << c.ansatz.n_qubits
        << " L=" << c.ansatz.layers << " params=" << seq.param_count()
        << " depth=" << ansatz::logical_depth(seq) << "\n";
    return 0;
}

int cmd_decompose(const config::RunConfig& c, std::ostream& log) {
    const auto g = fdtd::assemble_generator(c.maxwell);
    std::string text = io::config_header(c) + "# coefficient_real coefficient_imag word\n";
    std::string lines;
    for (const auto& t : g.pauli_form.terms) {
        const std::string re = io::format_double(t.coefficient.real());
        const std::string im = io::format_double(t.coefficient.imag());
        text += re + " " + im + " " + t.word.to_string() + "\n";
        ordered_json j;
        j["coefficient_real"] = t.coefficient.real();
        j["coefficient_imag"] = t.coefficient.imag();
        j["word"] = t.word.to_string();
        lines += j.dump() + "\n";
    }
    if (c.write_csv) io::write_file(join(c.output_dir, "decomposition.txt"), text);
    if (c.write_json) io::write_file(join(c.output_dir, "decomposition.jsonl"), lines);
    write_config(c);
    log << "decompose: " << g.pauli_form.terms.size() << " Pauli terms on "
        << g.pauli_form.n_qubits << " qubits\n";
    return 0;
}

int cmd_cost(const config::RunConfig& c, std::ostream& log) {
    ordered_json j = resources_json(c, c.ansatz);
    j["config"] = io::config_json(c);
    io::write_file(join(c.output_dir, "cost.json"), io::dump(j));
    write_config(c);
    log << "cost: d=" << ansatz::param_count(c.ansatz) << " query_cost="
        << io::format_double(j["query_cost"].get<double>()) << "\n";
    return 0;
}

int cmd_sweep(const config::RunConfig& c, std::ostream& log) {
    std::string csv = io::config_header(c) + "family,n_qubits,layers,params,epsilon_tr,mode,shots\n";
    const std::string mode_name = mclachlan::is_exact(c.evolution.mode) ? "exact" : "shots";
    bool warning = false;
    for (int l = 1; l <= c.max_layers; ++l) {
        config::RunConfig run = c;
        run.ansatz.layers = l;
        run.max_layers = l;
        run.output_dir = join(c.output_dir, "L" + std::to_string(l));
        const FitOutput f = initial_fit(run);
        const SolveOutput s = solve(run, f, true);
        write_fit(run, f);
        write_solve(run, f, s);
        write_config(run);
        warning = warning || s.degenerate_steps > 0 || !f.fit.converged;
        csv += ansatz::to_string(run.ansatz.family) + "," + std::to_string(run.n_qubits()) + "," +
               std::to_string(l) + "," + std::to_string(ansatz::param_count(run.ansatz)) + "," +
               io::format_double(s.report->epsilon_tr) + "," + mode_name + "," +
               std::to_string(shot_count(run.evolution.mode)) + "\n";
        log << "sweep: L=" << l << " fit=" << io::format_double(f.fit.final_cost)
            << " epsilon_tr=" << io::format_double(s.report->epsilon_tr) << "\n";
    }
    io::write_file(join(c.output_dir, "sweep.csv"), csv);
    write_config(c);
    if (warning) log << "warning: some sweep entries had unconverged fits or degenerate steps\n";
    return 0;
}

}  // namespace

config::RunConfig load(const Request& request) {
    config::Source source = request.config_path ? config::Source::load(*request.config_path)
                                                : config::Source{};
    for (const auto& o : request.overrides) source.set(o, "--set " + o);
    if (request.seed) source.set("seed", std::to_string(*request.seed), "--seed");
    if (request.out_dir) source.set("output.directory", *request.out_dir, "--out");
    if (request.mode) source.set("evolution.mode", *request.mode, "--mode");
    return config::resolve(source);
}

FitOutput initial_fit(const config::RunConfig& c) {
    const auto target = state_prep::target_state(c.maxwell, c.center, c.width);
    const auto found = state_prep::fit_increasing_depth(c.ansatz, target, c.spsa, c.eps_init,
                                                        c.max_layers, mclachlan::Exact{});
    return {found.spec, found.fit};
}

FitOutput read_params(const std::string& path) {
    const auto text = io::read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        FitOutput f;
        f.spec.family = ansatz::parse_family(j.at("family").get<std::string>());
        f.spec.n_qubits = j.at("n_qubits").get<int>();
        f.spec.layers = j.at("layers").get<int>();
        f.spec.validate();
        f.fit.theta0 = j.at("theta").get<std::vector<double>>();
        f.fit.final_cost = j.at("final_cost").get<double>();
        f.fit.converged = j.value("converged", true);
        if (f.fit.theta0.size() != static_cast<std::size_t>(ansatz::param_count(f.spec))) {
            throw InvalidArgument("theta has " + std::to_string(f.fit.theta0.size()) +
                                  " entries, ansatz needs " +
                                  std::to_string(ansatz::param_count(f.spec)));
        }
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<fdtd::Snapshot> reference_at(const config::RunConfig& c, const std::vector<double>& times) {
    const auto initial = fdtd::gaussian_initial(c.maxwell, c.center, c.width);
    const double t_end = times.empty() ? 0.0 : times.back();
    const auto all = fdtd::classical_solve(c.maxwell, initial, t_end);
    std::vector<fdtd::Snapshot> out;
    out.reserve(times.size());
    for (const double t : times) {
        const long k = std::lround(t / c.maxwell.dt);
        if (k < 0 || k >= static_cast<long>(all.size()) ||
            std::abs(all[static_cast<std::size_t>(k)].time - t) > 0.5 * c.maxwell.dt) {
            throw InvalidArgument("no classical step within dt/2 of t=" + io::format_double(t) +
                                  "; evolution.dt * snapshot_stride must be a multiple of maxwell.dt");
        }
        out.push_back(all[static_cast<std::size_t>(k)]);
    }
    return out;
}

SolveOutput solve(const config::RunConfig& c, const FitOutput& f, bool with_reference) {
    SolveOutput out;
    out.spec = f.spec;
    const auto seq = ansatz::build(f.spec);
    const auto generator = fdtd::assemble_generator(c.maxwell);
    out.trajectory = evolver::evolve(seq, f.fit.theta0, generator.pauli_form, c.evolution);
    for (const auto& d : out.trajectory.diagnostics) out.degenerate_steps += d.degenerate ? 1 : 0;
    const auto target = state_prep::target_state(c.maxwell, c.center, c.width);
    out.sign = state_prep::sign_alignment(out.trajectory.states.front(), target);
    if (with_reference) {
        out.reference = reference_at(c, out.trajectory.times);
        std::vector<metrics::TimedState> q;
        std::vector<metrics::TimedVector> r;
        for (std::size_t k = 0; k < out.trajectory.states.size(); ++k) {
            q.push_back({out.trajectory.times[k], out.trajectory.states[k]});
            r.push_back({(*out.reference)[k].time, fdtd::flatten((*out.reference)[k].fields)});
        }
        out.report = metrics::time_average_trace_error(q, r, c.maxwell.dt);
        out.report->metadata = run_metadata(c, f.spec);
    }
    return out;
}

int run(const Request& request, std::ostream& log) {
    const config::RunConfig c = load(request);
    for (const auto& w : c.warnings) log << "warning: " << w << "\n";
    const std::string& cmd = request.subcommand;
    if (cmd == "reference") return cmd_reference(c, log);
    if (cmd == "init-fit") return cmd_init_fit(c, log);
    if (cmd == "solve") return cmd_solve(c, request.with_reference, log);
    if (cmd == "compare") return cmd_compare(c, request.inputs, log);
    if (cmd == "ansatz") return cmd_ansatz(c, log);
    if (cmd == "decompose") return cmd_decompose(c, log);
    if (cmd == "cost") return cmd_cost(c, log);
    if (cmd == "sweep") return cmd_sweep(c, log);
    throw InvalidArgument("unknown subcommand '" + cmd + "'");
}

}  // namespace qmaxwell::runner
