#include "mopo_cli/manifest.hpp"

#include "mopo/errors.hpp"

#include <fstream>

namespace mopo::cli {

namespace {

template <class T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
    j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& v) {
    if (j.contains(key) && !j.at(key).is_null())
        v = j.at(key).get<T>();
    else
        v.reset();
}

}  // namespace

void to_json(nlohmann::json& j, const RunManifest& m) {
    j = nlohmann::json{{"command", m.command},
                       {"config_path", m.config_path},
                       {"config_hash", m.config_hash},
                       {"eps_list", m.eps_list},
                       {"phase_model", m.phase_model},
                       {"parameters", m.parameters},
                       {"outputs", m.outputs},
                       {"tool_version", m.tool_version},
                       {"wall_time_s", m.wall_time_s},
                       {"started_at", m.started_at}};
    put_optional(j, "gain", m.gain);
    put_optional(j, "epsilon", m.epsilon);
    put_optional(j, "seed", m.seed);
    put_optional(j, "grid_points", m.grid_points);
}

void from_json(const nlohmann::json& j, RunManifest& m) {
    j.at("command").get_to(m.command);
    j.at("config_path").get_to(m.config_path);
    j.at("config_hash").get_to(m.config_hash);
    j.at("eps_list").get_to(m.eps_list);
    j.at("phase_model").get_to(m.phase_model);
    j.at("parameters").get_to(m.parameters);
    j.at("outputs").get_to(m.outputs);
    j.at("tool_version").get_to(m.tool_version);
    j.at("wall_time_s").get_to(m.wall_time_s);
    j.at("started_at").get_to(m.started_at);
    get_optional(j, "gain", m.gain);
    get_optional(j, "epsilon", m.epsilon);
    get_optional(j, "seed", m.seed);
    get_optional(j, "grid_points", m.grid_points);
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    // max_digits10 keeps doubles exact through a round trip
    out << nlohmann::json(m).dump(2) << '\n';
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    return nlohmann::json::parse(in).get<RunManifest>();
}

}  // namespace mopo::cli
