#include "qmaxwell/io.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "qmaxwell/errors.hpp"

namespace qmaxwell::io {

std::string format_double(double value) {
    if (value == 0.0) return "0";
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw InvalidArgument("cannot format number");
    return std::string(buf.data(), end);
}

double parse_double(std::string_view text) {
    double out = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto [p, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || p != last || first == last) {
        throw ParseError("not a number: '" + std::string(text) + "'");
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << content;
    if (!out) throw InvalidArgument("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string config_header(const config::RunConfig& config) {
    std::string out;
    for (const auto& [k, v] : config::effective_entries(config)) out += "# " + k + " = " + v + "\n";
    return out;
}

std::string trajectory_csv(const config::RunConfig& config,
                           const std::vector<FieldSnapshot>& snapshots) {
    std::string out = config_header(config);
    out += "time,field,node_index,value,source\n";
    for (const auto& s : snapshots) {
        const Eigen::VectorXd u = fdtd::flatten(s.fields);
        const int n = s.fields.n_grid();
        const std::string t = format_double(s.time);
        for (int f = 0; f < fdtd::kFieldCount; ++f) {
            for (int i = 0; i < n; ++i) {
                out += t;
                out += ',';
                out += fdtd::kFieldNames[f];
                out += ',';
                out += std::to_string(i);
                out += ',';
                out += format_double(u[f * n + i]);
                out += ',';
                out += s.source;
                out += '\n';
            }
        }
    }
    return out;
}

std::string trajectory_jsonl(const std::vector<FieldSnapshot>& snapshots) {
    std::string out;
    for (const auto& s : snapshots) {
        nlohmann::ordered_json j;
        j["time"] = s.time;
        j["source"] = s.source;
        auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.begin(), v.end()); };
        j["by"] = vec(s.fields.by);
        j["bz"] = vec(s.fields.bz);
        j["ey"] = vec(s.fields.ey);
        j["ez"] = vec(s.fields.ez);
        out += j.dump() + "\n";
    }
    return out;
}

std::vector<FieldSnapshot> TrajectoryFile::of_source(const std::string& source) const {
    std::vector<FieldSnapshot> out;
    for (const auto& s : snapshots) {
        if (s.source == source) out.push_back(s);
    }
    return out;
}

TrajectoryFile read_trajectory_csv(const std::string& text, const std::string& name) {
    TrajectoryFile file;
    struct Rows {
        std::map<std::pair<int, int>, double> values;  // (field, node) -> value
        int max_node = -1;
    };
    // Snapshots keyed by (order of first appearance) to keep file order.
    std::vector<std::pair<std::pair<std::string, std::string>, Rows>> groups;
    std::map<std::pair<std::string, std::string>, std::size_t> index;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = name + ":" + std::to_string(line_no);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find(" = ");
            if (eq != std::string::npos) {
                file.header.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
            }
            continue;
        }
        if (!seen_header) {
            if (line != "time,field,node_index,value,source") {
                throw ParseError(where + ": expected trajectory column header");
            }
            seen_header = true;
            continue;
        }
        std::array<std::string, 5> cols;
        std::istringstream row(line);
        std::size_t k = 0;
        for (std::string cell; std::getline(row, cell, ',');) {
            if (k == cols.size()) throw ParseError(where + ": too many columns");
            cols[k++] = cell;
        }
        if (k != cols.size()) throw ParseError(where + ": expected 5 columns");
        int field = 0;
        int node = 0;
        double value = 0.0;
        try {
            field = fdtd::field_index(cols[1]);
            node = std::stoi(cols[2]);
            value = parse_double(cols[3]);
            parse_double(cols[0]);
        } catch (const std::exception& e) {
            throw ParseError(where + ": " + e.what());
        }
        if (node < 0) throw ParseError(where + ": negative node index");
        const auto key = std::make_pair(cols[0], cols[4]);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, groups.size()).first;
            groups.push_back({key, {}});
        }
        auto& rows = groups[it->second].second;
        rows.values[{field, node}] = value;
        rows.max_node = std::max(rows.max_node, node);
    }
    if (!seen_header) throw ParseError(name + ": no trajectory rows");
    for (const auto& [key, rows] : groups) {
        const int n = rows.max_node + 1;
        if (static_cast<int>(rows.values.size()) != fdtd::kFieldCount * n) {
            throw ParseError(name + ": snapshot t=" + key.first + " (" + key.second +
                             ") is incomplete");
        }
        Eigen::VectorXd u(fdtd::kFieldCount * n);
        for (const auto& [fi, v] : rows.values) u[fi.first * n + fi.second] = v;
        file.snapshots.push_back({parse_double(key.first), key.second, fdtd::unflatten(u, n)});
    }
    return file;
}

nlohmann::ordered_json config_json(const config::RunConfig& config) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config::effective_entries(config)) j[k] = v;
    return j;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace qmaxwell::io
