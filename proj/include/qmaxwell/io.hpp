#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qmaxwell/config.hpp"
#include "qmaxwell/maxwell.hpp"

namespace qmaxwell::io {

/// Shortest decimal that round-trips, independent of the C locale.
std::string format_double(double value);
double parse_double(std::string_view text);

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// "# key = value" lines echoing the effective configuration.
std::string config_header(const config::RunConfig& config);

/// One decoded snapshot of all four field blocks.
struct FieldSnapshot {
    double time = 0.0;
    std::string source;  ///< "quantum" or "classical"
    fdtd::FieldState fields;
};

/// time,field,node_index,value,source rows, preceded by the config header.
std::string trajectory_csv(const config::RunConfig& config,
                           const std::vector<FieldSnapshot>& snapshots);

/// One JSON object per line: {"time", "source", "by", "bz", "ey", "ez"}.
std::string trajectory_jsonl(const std::vector<FieldSnapshot>& snapshots);

struct TrajectoryFile {
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<FieldSnapshot> snapshots;

    /// Snapshots of one source, in file order.
    std::vector<FieldSnapshot> of_source(const std::string& source) const;
};

/// Parses a file written by trajectory_csv. Malformed rows raise ParseError
/// naming the line.
TrajectoryFile read_trajectory_csv(const std::string& text, const std::string& name);

/// Config as a JSON object of strings, for embedding in reports.
nlohmann::ordered_json config_json(const config::RunConfig& config);

/// Pretty JSON with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace qmaxwell::io
