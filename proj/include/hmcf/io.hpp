#ifndef HMCF_IO_HPP
#define HMCF_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmcf/diagnostics.hpp"
#include "hmcf/nashmoser.hpp"
#include "hmcf/state.hpp"

namespace hmcf::io {

inline constexpr const char* kVersion = "0.1.0";

// Shortest round-trippable decimal representation, locale-free. All CSV
// output goes through this so repeated runs are bit-identical.
std::string format_double(double v);

// Node dump: one row per (sample, node) as  t, j, x, y, vx, vy.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

// One row per sample time with the named conserved quantities.
void write_conservation_csv(const std::filesystem::path& path, const ConservationReport& rep);

// One row per iteration level.
void write_trace_csv(const std::filesystem::path& path, const IterationTrace& trace);

nlohmann::json trajectory_summary(const Trajectory& traj);
nlohmann::json conservation_summary(const ConservationReport& rep, const VolumeBoundCheck& bound);
nlohmann::json trace_summary(const NashMoserResult& result);

// Fresh timestamped run directory under `base`; never reuses an existing one.
std::filesystem::path fresh_run_dir(const std::filesystem::path& base, const std::string& label);

struct RunManifest {
    nlohmann::json config_echo;
    std::string version = kVersion;
    std::string command;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
    int exit_status = -1;  // -1 while running
    std::string message;
};

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

} // namespace hmcf::io

#endif
