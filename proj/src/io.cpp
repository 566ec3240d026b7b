#include "hmcf/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>

#include "hmcf/errors.hpp"

namespace hmcf::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path.string());
    return out;
}

std::string now_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

void write_trajectory_csv(const fs::path& path, const Trajectory& traj) {
    auto out = open_out(path);
    out << "t,j,x,y,vx,vy\n";
    for (const auto& st : traj.samples)
        for (std::size_t j = 0; j < st.F.size(); ++j)
            out << format_double(st.t) << ',' << j << ','
                << format_double(st.F.positions[j].x) << ','
                << format_double(st.F.positions[j].y) << ','
                << format_double(st.V[j].x) << ',' << format_double(st.V[j].y) << '\n';
}

void write_conservation_csv(const fs::path& path, const ConservationReport& rep) {
    auto out = open_out(path);
    out << "t,kinetic,potential_integral,pressure_term,e_ham,e_paper,"
           "m_x,m_y,m_rot,q_y,volume,volume_lower_bound\n";
    for (std::size_t i = 0; i < rep.t.size(); ++i)
        out << format_double(rep.t[i]) << ',' << format_double(rep.kinetic[i]) << ','
            << format_double(rep.potential_integral[i]) << ','
            << format_double(rep.pressure_term[i]) << ',' << format_double(rep.e_ham[i]) << ','
            << format_double(rep.e_paper[i]) << ',' << format_double(rep.m_x[i]) << ','
            << format_double(rep.m_y[i]) << ',' << format_double(rep.m_rot[i]) << ','
            << format_double(rep.q_y[i]) << ',' << format_double(rep.volume[i]) << ','
            << format_double(rep.volume_lower_bound) << '\n';
}

void write_trace_csv(const fs::path& path, const IterationTrace& trace) {
    auto out = open_out(path);
    out << "level,cutoff,order,residual_norm,increment_norm,wall_ms\n";
    for (const auto& row : trace.rows)
        out << row.level << ',' << format_double(row.cutoff) << ','
            << format_double(row.order) << ',' << format_double(row.residual_norm) << ','
            << format_double(row.increment_norm) << ',' << format_double(row.wall_ms) << '\n';
}

nlohmann::json trajectory_summary(const Trajectory& traj) {
    nlohmann::json j;
    j["samples"] = traj.size();
    j["completed"] = traj.completed;
    if (!traj.completed) j["abort_reason"] = traj.abort_reason;
    j["t_final"] = traj.samples.empty() ? 0.0 : traj.back_time();
    if (!traj.samples.empty()) {
        j["volume_initial"] = enclosed_volume(traj.samples.front().F);
        j["volume_final"] = enclosed_volume(traj.samples.back().F);
        double disp = 0.0;
        const auto& a = traj.samples.front().F.positions;
        const auto& b = traj.samples.back().F.positions;
        for (std::size_t k = 0; k < a.size(); ++k) disp = std::max(disp, norm(b[k] - a[k]));
        j["max_node_displacement"] = disp;
    }
    return j;
}

nlohmann::json conservation_summary(const ConservationReport& rep, const VolumeBoundCheck& bound) {
    nlohmann::json j;
    j["conserved_energy"] = rep.conserved_energy;
    j["e0"] = rep.e0;
    j["drift"]["e_ham_relative"] = rep.relative_drift_e_ham();
    j["drift"]["e_paper_relative"] = rep.relative_drift_e_paper();
    j["drift"]["m_x"] = rep.drift_m_x();
    j["drift"]["m_y"] = rep.drift_m_y();
    j["drift"]["m_rot"] = rep.drift_m_rot();
    j["drift"]["q_y"] = rep.drift_q_y();
    j["volume_bound"]["pass"] = bound.pass;
    j["volume_bound"]["bound"] = bound.bound;
    j["volume_bound"]["min_volume"] = bound.min_volume;
    j["volume_bound"]["worst_margin"] = bound.worst_margin;
    j["volume_bound"]["max_volume"] = bound.max_volume;
    return j;
}

nlohmann::json trace_summary(const NashMoserResult& result) {
    nlohmann::json j;
    j["converged"] = result.converged;
    j["termination"] = result.trace.termination;
    j["levels"] = result.trace.rows.size();
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.trace.rows) {
        rows.push_back({{"level", r.level},
                        {"cutoff", r.cutoff},
                        {"order", r.order},
                        {"residual_norm", r.residual_norm},
                        {"increment_norm", r.increment_norm}});
    }
    j["trace"] = rows;
    return j;
}

fs::path fresh_run_dir(const fs::path& base, const std::string& label) {
    fs::create_directories(base);
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", &tm);
    for (int k = 0;; ++k) {
        fs::path dir = base / (label + "-" + stamp + (k == 0 ? "" : "-" + std::to_string(k)));
        if (!fs::exists(dir)) {
            fs::create_directories(dir);
            return dir;
        }
    }
}

void write_manifest(const fs::path& dir, const RunManifest& manifest) {
    nlohmann::json j;
    j["version"] = manifest.version;
    j["command"] = manifest.command;
    j["started"] = manifest.started.empty() ? now_utc() : manifest.started;
    j["finished"] = manifest.finished;
    j["config"] = manifest.config_echo;
    j["outputs"] = manifest.outputs;
    j["exit_status"] = manifest.exit_status;
    if (!manifest.message.empty()) j["message"] = manifest.message;
    write_json(dir / "manifest.json", j);
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

} // namespace hmcf::io
