#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qmaxwell/ansatz.hpp"
#include "qmaxwell/errors.hpp"
#include "qmaxwell/evolver.hpp"
#include "qmaxwell/maxwell.hpp"
#include "qmaxwell/state_prep.hpp"

namespace qmaxwell::config {

/// Bad config text or value; the message starts with "origin:line:".
class ConfigError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Raw "section.key" -> value map that remembers where each value came from.
class Source {
public:
    struct Entry {
        std::string value;
        std::string origin;
    };

    /// Sections are "[name]"; keys before the first section are top-level.
    /// '#' and ';' start comments.
    static Source parse(std::string_view text, const std::string& name);
    static Source load(const std::string& path);

    /// "section.key=value", as given on the command line.
    void set(std::string_view assignment, const std::string& origin = "--set");
    void set(const std::string& key, const std::string& value, const std::string& origin);

    const std::map<std::string, Entry>& entries() const { return entries_; }

private:
    std::map<std::string, Entry> entries_;
};

struct RunConfig {
    fdtd::MaxwellConfig maxwell;
    double center = 0.5;
    double width = 0.08;

    ansatz::AnsatzSpec ansatz;
    /// Upper bound for the depth search in init-fit and for sweep.
    int max_layers = 1;

    evolver::EvolutionConfig evolution;

    state_prep::SpsaConfig spsa;
    double eps_init = 1e-2;
    /// 0 disables the mesh-refinement check.
    double eps_discretization = 0.0;
    std::string theta_file;

    /// Target precision in the query-cost estimate.
    double query_epsilon = 1e-2;

    std::string output_dir = "out";
    bool write_csv = true;
    bool write_json = true;

    std::uint64_t seed = 0;
    std::vector<std::string> warnings;

    int n_qubits() const { return ansatz.n_qubits; }
};

/// Applies defaults, parses every value, and checks cross-field constraints.
/// Unknown keys and bad values raise ConfigError naming their origin.
RunConfig resolve(const Source& source);

/// Effective configuration in the same format; resolve(parse(to_ini(c)))
/// reproduces c exactly.
std::string to_ini(const RunConfig& config);

/// Ordered (key, value) pairs of the effective configuration.
std::vector<std::pair<std::string, std::string>> effective_entries(const RunConfig& config);

}  // namespace qmaxwell::config
