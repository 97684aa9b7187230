#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mopo::cli {

inline constexpr const char* tool_version = "0.1.0";

/// Record of one CLI invocation; written as manifest.json next to the outputs.
struct RunManifest {
    std::string command;
    std::string config_path;
    std::string config_hash;
    std::optional<double> gain;
    std::optional<double> epsilon;
    std::vector<double> eps_list;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid_points;
    std::string phase_model;
    std::map<std::string, double> parameters;  // any further resolved numbers
    std::vector<std::string> outputs;
    std::string tool_version = cli::tool_version;
    double wall_time_s = 0.0;
    std::string started_at;

    bool operator==(const RunManifest&) const = default;
};

void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

void write_manifest(const RunManifest& m, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace mopo::cli
