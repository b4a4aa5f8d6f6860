#include "qmaxwell/config.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "qmaxwell/io.hpp"

namespace qmaxwell::config {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string_view strip_comment(std::string_view s) {
    const auto p = s.find_first_of("#;");
    return p == std::string_view::npos ? s : s.substr(0, p);
}

long long parse_integer(const std::string& v) {
    long long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        throw InvalidArgument("expected an integer, got '" + v + "'");
    }
    return out;
}

std::uint64_t parse_unsigned(const std::string& v) {
    std::uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        throw InvalidArgument("expected a non-negative integer, got '" + v + "'");
    }
    return out;
}

int parse_int(const std::string& v) {
    const long long x = parse_integer(v);
    if (x < -(1LL << 31) || x >= (1LL << 31)) throw InvalidArgument("integer out of range: " + v);
    return static_cast<int>(x);
}

double parse_real(const std::string& v) {
    try {
        const double x = io::parse_double(v);
        if (!std::isfinite(x)) throw InvalidArgument("");
        return x;
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("expected a finite number, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw InvalidArgument("expected true or false, got '" + v + "'");
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

// Values whose parsing depends on other keys, applied after the table.
struct Pending {
    std::string mode = "exact";
    std::string regularization = "svd_cutoff";
    double rho = 1e-8;
    double ridge = 0.0;
};

using Setter = std::function<void(RunConfig&, Pending&, const std::string&)>;

const std::vector<std::pair<std::string, Setter>>& key_table() {
    static const std::vector<std::pair<std::string, Setter>> table = {
        {"seed", [](RunConfig& c, Pending&, const std::string& v) { c.seed = parse_unsigned(v); }},
        {"maxwell.n_grid",
         [](RunConfig& c, Pending&, const std::string& v) { c.maxwell.n_grid = parse_int(v); }},
        {"maxwell.domain_length",
         [](RunConfig& c, Pending&, const std::string& v) { c.maxwell.domain_length = parse_real(v); }},
        {"maxwell.c", [](RunConfig& c, Pending&, const std::string& v) { c.maxwell.c = parse_real(v); }},
        {"maxwell.dt", [](RunConfig& c, Pending&, const std::string& v) { c.maxwell.dt = parse_real(v); }},
        {"maxwell.boundary",
         [](RunConfig& c, Pending&, const std::string& v) { c.maxwell.boundary = fdtd::parse_boundary(v); }},
        {"maxwell.center", [](RunConfig& c, Pending&, const std::string& v) { c.center = parse_real(v); }},
        {"maxwell.width", [](RunConfig& c, Pending&, const std::string& v) { c.width = parse_real(v); }},
        {"ansatz.family",
         [](RunConfig& c, Pending&, const std::string& v) { c.ansatz.family = ansatz::parse_family(v); }},
        {"ansatz.n_qubits",
         [](RunConfig& c, Pending&, const std::string& v) { c.ansatz.n_qubits = parse_int(v); }},
        {"ansatz.layers", [](RunConfig& c, Pending&, const std::string& v) { c.ansatz.layers = parse_int(v); }},
        {"ansatz.max_layers", [](RunConfig& c, Pending&, const std::string& v) { c.max_layers = parse_int(v); }},
        {"evolution.dt", [](RunConfig& c, Pending&, const std::string& v) { c.evolution.dt = parse_real(v); }},
        {"evolution.t_final",
         [](RunConfig& c, Pending&, const std::string& v) { c.evolution.t_final = parse_real(v); }},
        {"evolution.mode", [](RunConfig&, Pending& p, const std::string& v) { p.mode = v; }},
        {"evolution.regularization",
         [](RunConfig&, Pending& p, const std::string& v) {
             if (v != "svd_cutoff" && v != "ridge") {
                 throw InvalidArgument("expected svd_cutoff or ridge, got '" + v + "'");
             }
             p.regularization = v;
         }},
        {"evolution.rho", [](RunConfig&, Pending& p, const std::string& v) { p.rho = parse_real(v); }},
        {"evolution.ridge_lambda", [](RunConfig&, Pending& p, const std::string& v) { p.ridge = parse_real(v); }},
        {"evolution.snapshot_stride",
         [](RunConfig& c, Pending&, const std::string& v) { c.evolution.snapshot_stride = parse_int(v); }},
        {"evolution.integrator",
         [](RunConfig& c, Pending&, const std::string& v) { c.evolution.integrator = evolver::parse_integrator(v); }},
        {"evolution.phase_correction",
         [](RunConfig& c, Pending&, const std::string& v) { c.evolution.options.phase_correction = parse_bool(v); }},
        {"state_prep.iterations",
         [](RunConfig& c, Pending&, const std::string& v) { c.spsa.iterations = parse_int(v); }},
        {"state_prep.a", [](RunConfig& c, Pending&, const std::string& v) { c.spsa.a = parse_real(v); }},
        {"state_prep.c", [](RunConfig& c, Pending&, const std::string& v) { c.spsa.c = parse_real(v); }},
        {"state_prep.A", [](RunConfig& c, Pending&, const std::string& v) { c.spsa.A = parse_real(v); }},
        {"state_prep.alpha", [](RunConfig& c, Pending&, const std::string& v) { c.spsa.alpha = parse_real(v); }},
        {"state_prep.gamma", [](RunConfig& c, Pending&, const std::string& v) { c.spsa.gamma = parse_real(v); }},
        {"state_prep.restarts",
         [](RunConfig& c, Pending&, const std::string& v) { c.spsa.restarts = parse_int(v); }},
        {"state_prep.tolerance",
         [](RunConfig& c, Pending&, const std::string& v) { c.spsa.tolerance = parse_real(v); }},
        {"state_prep.eps_init", [](RunConfig& c, Pending&, const std::string& v) { c.eps_init = parse_real(v); }},
        {"state_prep.eps_discretization",
         [](RunConfig& c, Pending&, const std::string& v) { c.eps_discretization = parse_real(v); }},
        {"state_prep.theta_file", [](RunConfig& c, Pending&, const std::string& v) { c.theta_file = v; }},
        {"resources.epsilon",
         [](RunConfig& c, Pending&, const std::string& v) { c.query_epsilon = parse_real(v); }},
        {"output.directory", [](RunConfig& c, Pending&, const std::string& v) { c.output_dir = v; }},
        {"output.formats",
         [](RunConfig& c, Pending&, const std::string& v) {
             c.write_csv = c.write_json = false;
             std::stringstream ss(v);
             std::string item;
             while (std::getline(ss, item, ',')) {
                 const auto f = trim(item);
                 if (f == "csv") {
                     c.write_csv = true;
                 } else if (f == "json") {
                     c.write_json = true;
                 } else {
                     throw InvalidArgument("unknown output format '" + std::string(f) + "'");
                 }
             }
             if (!c.write_csv && !c.write_json) throw InvalidArgument("no output format selected");
         }},
    };
    return table;
}

[[noreturn]] void fail(const std::string& origin, const std::string& key, const std::string& msg) {
    throw ConfigError(origin + ": " + key + ": " + msg);
}

}  // namespace

Source Source::parse(std::string_view text, const std::string& name) {
    Source out;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        const auto raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        const std::string origin = name + ":" + std::to_string(line_no);
        const auto line = trim(strip_comment(raw));
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError(origin + ": malformed section header '" + std::string(line) + "'");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
        } else {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError(origin + ": expected 'key = value', got '" + std::string(line) + "'");
            }
            const auto key = trim(line.substr(0, eq));
            if (key.empty()) throw ConfigError(origin + ": empty key");
            const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
            if (out.entries_.count(full)) {
                throw ConfigError(origin + ": duplicate key '" + full + "' (first set at " +
                                  out.entries_.at(full).origin + ")");
            }
            out.entries_[full] = {std::string(trim(line.substr(eq + 1))), origin};
        }
        if (end == text.size()) break;
    }
    return out;
}

Source Source::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

void Source::set(std::string_view assignment, const std::string& origin) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(origin + ": expected key=value, got '" + std::string(assignment) + "'");
    }
    set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))),
        origin);
}

void Source::set(const std::string& key, const std::string& value, const std::string& origin) {
    if (key.empty()) throw ConfigError(origin + ": empty key");
    entries_[key] = {value, origin};
}

RunConfig resolve(const Source& source) {
    RunConfig c;
    Pending pending;
    const auto& entries = source.entries();
    std::set<std::string> known;
    for (const auto& [key, setter] : key_table()) {
        known.insert(key);
        const auto it = entries.find(key);
        if (it == entries.end()) continue;
        try {
            setter(c, pending, it->second.value);
        } catch (const std::invalid_argument& e) {
            fail(it->second.origin, key, e.what());
        }
    }
    for (const auto& [key, entry] : entries) {
        if (!known.count(key)) fail(entry.origin, key, "unknown key");
    }
    auto origin_of = [&](const std::string& key) {
        const auto it = entries.find(key);
        return it == entries.end() ? std::string("defaults") : it->second.origin;
    };
    auto check = [&](const std::string& key, auto&& fn) {
        try {
            fn();
        } catch (const std::invalid_argument& e) {
            fail(origin_of(key), key, e.what());
        }
    };

    // Grid-dependent defaults.
    const auto& m = c.maxwell;
    check("maxwell.n_grid", [&] {
        if (m.n_grid < 4 || !std::has_single_bit(static_cast<unsigned>(m.n_grid))) {
            throw InvalidArgument("must be a power of two >= 4, got " + std::to_string(m.n_grid));
        }
    });
    check("maxwell.domain_length", [&] {
        if (!(m.domain_length > 0.0)) throw InvalidArgument("must be positive");
    });
    check("maxwell.c", [&] {
        if (!(m.c > 0.0)) throw InvalidArgument("must be positive");
    });
    if (!entries.count("maxwell.dt")) c.maxwell.dt = 0.1 * m.dx() / m.c;
    if (!entries.count("maxwell.center")) c.center = 0.5 * m.domain_length;
    if (!entries.count("maxwell.width")) c.width = 0.08 * m.domain_length;
    check("maxwell.dt", [&] { c.warnings = c.maxwell.validate(); });
    check("maxwell.center", [&] {
        if (!(c.center > 0.0 && c.center < m.domain_length)) {
            throw InvalidArgument("must lie strictly inside the domain");
        }
    });
    check("maxwell.width", [&] {
        if (!(c.width > 0.0)) throw InvalidArgument("must be positive");
    });

    const int derived_qubits = std::countr_zero(static_cast<unsigned>(4 * m.n_grid));
    if (entries.count("ansatz.n_qubits")) {
        check("ansatz.n_qubits", [&] {
            if (c.ansatz.n_qubits != derived_qubits) {
                throw InvalidArgument("4*n_grid = " + std::to_string(4 * m.n_grid) + " needs " +
                                      std::to_string(derived_qubits) + " qubits, got " +
                                      std::to_string(c.ansatz.n_qubits));
            }
        });
    }
    c.ansatz.n_qubits = derived_qubits;
    check("ansatz.layers", [&] { c.ansatz.validate(); });
    if (!entries.count("ansatz.max_layers")) c.max_layers = c.ansatz.layers;
    check("ansatz.max_layers", [&] {
        if (c.max_layers < c.ansatz.layers) throw InvalidArgument("must be >= ansatz.layers");
    });

    if (!entries.count("evolution.dt")) c.evolution.dt = c.maxwell.dt;
    check("evolution.mode", [&] { c.evolution.mode = mclachlan::parse_mode(pending.mode, c.seed); });
    check("evolution.rho", [&] {
        if (pending.regularization == "svd_cutoff" && !(pending.rho > 0.0 && pending.rho < 1.0)) {
            throw InvalidArgument("must lie in (0, 1)");
        }
    });
    check("evolution.ridge_lambda", [&] {
        if (pending.ridge < 0.0) throw InvalidArgument("must be non-negative");
    });
    if (pending.regularization == "ridge") {
        c.evolution.regularization = evolver::Ridge{pending.ridge};
    } else {
        c.evolution.regularization = evolver::SvdCutoff{pending.rho};
    }
    check("evolution.dt", [&] { c.evolution.validate(); });

    c.spsa.seed = c.seed;
    check("state_prep.iterations", [&] { c.spsa.validate(); });
    check("state_prep.eps_init", [&] {
        if (!(c.eps_init > 0.0 && c.eps_init < 1.0)) throw InvalidArgument("must lie in (0, 1)");
    });
    check("state_prep.eps_discretization", [&] {
        if (c.eps_discretization < 0.0) throw InvalidArgument("must be non-negative");
    });
    check("resources.epsilon", [&] {
        if (!(c.query_epsilon > 0.0)) throw InvalidArgument("must be positive");
    });
    check("output.directory", [&] {
        if (c.output_dir.empty()) throw InvalidArgument("must not be empty");
    });
    return c;
}

std::vector<std::pair<std::string, std::string>> effective_entries(const RunConfig& c) {
    using io::format_double;
    std::vector<std::pair<std::string, std::string>> out;
    auto add = [&](std::string k, std::string v) { out.emplace_back(std::move(k), std::move(v)); };
    add("seed", std::to_string(c.seed));
    add("maxwell.n_grid", std::to_string(c.maxwell.n_grid));
    add("maxwell.domain_length", format_double(c.maxwell.domain_length));
    add("maxwell.c", format_double(c.maxwell.c));
    add("maxwell.dt", format_double(c.maxwell.dt));
    add("maxwell.boundary", fdtd::to_string(c.maxwell.boundary));
    add("maxwell.center", format_double(c.center));
    add("maxwell.width", format_double(c.width));
    add("ansatz.family", ansatz::to_string(c.ansatz.family));
    add("ansatz.n_qubits", std::to_string(c.ansatz.n_qubits));
    add("ansatz.layers", std::to_string(c.ansatz.layers));
    add("ansatz.max_layers", std::to_string(c.max_layers));
    add("evolution.dt", format_double(c.evolution.dt));
    add("evolution.t_final", format_double(c.evolution.t_final));
    add("evolution.mode", mclachlan::to_string(c.evolution.mode));
    if (const auto* r = std::get_if<evolver::Ridge>(&c.evolution.regularization)) {
        add("evolution.regularization", "ridge");
        add("evolution.ridge_lambda", format_double(r->lambda));
    } else {
        add("evolution.regularization", "svd_cutoff");
        add("evolution.rho", format_double(std::get<evolver::SvdCutoff>(c.evolution.regularization).rho));
    }
    add("evolution.snapshot_stride", std::to_string(c.evolution.snapshot_stride));
    add("evolution.integrator", evolver::to_string(c.evolution.integrator));
    add("evolution.phase_correction", format_bool(c.evolution.options.phase_correction));
    add("state_prep.iterations", std::to_string(c.spsa.iterations));
    add("state_prep.a", format_double(c.spsa.a));
    add("state_prep.c", format_double(c.spsa.c));
    add("state_prep.A", format_double(c.spsa.A));
    add("state_prep.alpha", format_double(c.spsa.alpha));
    add("state_prep.gamma", format_double(c.spsa.gamma));
    add("state_prep.restarts", std::to_string(c.spsa.restarts));
    add("state_prep.tolerance", format_double(c.spsa.tolerance));
    add("state_prep.eps_init", format_double(c.eps_init));
    add("state_prep.eps_discretization", format_double(c.eps_discretization));
    if (!c.theta_file.empty()) add("state_prep.theta_file", c.theta_file);
    add("resources.epsilon", format_double(c.query_epsilon));
    add("output.directory", c.output_dir);
    std::string formats;
    if (c.write_csv) formats = "csv";
    if (c.write_json) formats += formats.empty() ? "json" : ",json";
    add("output.formats", formats);
    return out;
}

std::string to_ini(const RunConfig& c) {
    std::string out;
    std::string section;
    for (const auto& [key, value] : effective_entries(c)) {
        const auto dot = key.find('.');
        if (dot == std::string::npos) {
            out += key + " = " + value + "\n";
            continue;
        }
        const std::string s = key.substr(0, dot);
        if (s != section) {
            out += "\n[" + s + "]\n";
            section = s;
        }
        out += key.substr(dot + 1) + " = " + value + "\n";
    }
    return out;
}

}  // namespace qmaxwell::config
