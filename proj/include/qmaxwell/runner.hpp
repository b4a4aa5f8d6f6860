#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmaxwell/config.hpp"
#include "qmaxwell/evolver.hpp"
#include "qmaxwell/metrics.hpp"
#include "qmaxwell/state_prep.hpp"

namespace qmaxwell::runner {

inline constexpr const char* kSubcommands[] = {"solve",  "reference", "compare", "init-fit",
                                               "ansatz", "decompose", "cost",    "sweep"};

struct Request {
    std::string subcommand;
    std::optional<std::string> config_path;
    std::vector<std::string> overrides;  ///< "section.key=value"
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> mode;     ///< "exact" or "shots:M"
    bool with_reference = false;         ///< solve: also run and compare the classical reference
    std::vector<std::string> inputs;     ///< compare: two trajectory files
};

/// Config file, then --set overrides, then the dedicated flags.
config::RunConfig load(const Request& request);

struct FitOutput {
    ansatz::AnsatzSpec spec;
    state_prep::FitResult fit;
};

/// Depth search from ansatz.layers to ansatz.max_layers.
FitOutput initial_fit(const config::RunConfig& config);

/// Reads a parameter file written by init-fit.
FitOutput read_params(const std::string& path);

/// Classical snapshots at the stamps of `times`; throws if a stamp has no
/// classical step within maxwell.dt / 2.
std::vector<fdtd::Snapshot> reference_at(const config::RunConfig& config,
                                         const std::vector<double>& times);

struct SolveOutput {
    ansatz::AnsatzSpec spec;
    evolver::Trajectory trajectory;
    /// Global sign applied when decoding amplitudes into fields.
    double sign = 1.0;
    std::optional<std::vector<fdtd::Snapshot>> reference;
    std::optional<metrics::ErrorReport> report;
    int degenerate_steps = 0;
};

SolveOutput solve(const config::RunConfig& config, const FitOutput& fit, bool with_reference);

/// Runs one subcommand, writing its files under config.output_dir. Returns
/// the process exit status. Config and input errors propagate as exceptions.
int run(const Request& request, std::ostream& log);

}  // namespace qmaxwell::runner
